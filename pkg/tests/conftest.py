import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lauricella_dmod.polyalg import RATIONALS, xxi_ring
from lauricella_dmod.weyl import weyl_algebra

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows, ring):
    """Sum over permutations; deliberately the slowest, most direct formula."""
    n = len(rows)
    total = ring.zero
    for perm in itertools.permutations(range(n)):
        term = ring.const(permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def polys(ring, max_terms=4, max_exp=2, coeff_range=5):
    """Random polynomials with small integer coefficients."""
    n = ring.nvars
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    coeffs = st.integers(-coeff_range, coeff_range)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(ring.from_terms)


def weyl_ops(alg, max_terms=3, max_exp=2, coeff_range=4):
    """Random operators with rational coefficients over a Weyl algebra."""
    m = alg.m
    mono = st.tuples(st.tuples(*[st.integers(0, max_exp)] * m), st.tuples(*[st.integers(0, max_exp)] * m))
    coeffs = st.integers(-coeff_range, coeff_range).filter(bool)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(alg.element)


def fractions(lo=-20, hi=20):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, hi))


@pytest.fixture
def ring2():
    return xxi_ring(2, RATIONALS)


@pytest.fixture
def alg2():
    return weyl_algebra(2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok, detail = results[n]
        extra = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {n:>2} [{'PASS' if ok else 'FAIL'}] {title}{extra}")
