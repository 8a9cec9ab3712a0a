"""Singular-locus polynomials from the epsilon-branch determinants.

Each generator ``L_i`` factors as ``x_i xi_i * R_i``.  Choosing for every ``i``
which factor vanishes (``eps_i = 0``: ``x_i xi_i``, ``eps_i = 1``: ``R_i``)
turns ``L_1 = .. = L_m = 0`` into a linear system in ``xi`` whenever every
``R_i`` is linear in ``xi``.  Nonzero ``xi`` solutions exist iff the
coefficient matrix is singular, so the product of the ``2^m`` determinants
defines the projection of the characteristic variety off the zero section.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .charvar import LOCAL_GB, PROVENANCE, char_gens
from .families import FamilySpec
from .polyalg import (
    RATIONALS,
    NotDivisible,
    PolyMatrix,
    det_fraction_free,
    exact_divide,
    xxi_ring,
)

SING_FAMILIES = ("A", "B", "C")
DEFAULT_CAP = 8

EXACT = "exact"
CONTAINS_ONLY = "contains_only"


class UnsupportedBranch(Exception):
    """A generator does not split into ``x_i xi_i`` times a form linear in ``xi``."""

    def __init__(self, family, index, polynomial, reason):
        self.family = family
        self.index = index
        self.polynomial = polynomial
        self.reason = reason
        super().__init__(f"{family} generator {index}: {reason}: {polynomial.to_text()}")


def sing_ring(m):
    return xxi_ring(m, RATIONALS)


def _check_family(family):
    if family not in SING_FAMILIES:
        raise ValueError(f"family must be one of {SING_FAMILIES}")


@lru_cache(maxsize=None)
def _branch_rows(family, m):
    """Per generator: the eps=0 row and the eps=1 row (or the UnsupportedBranch)."""
    _check_family(family)
    ring = sing_ring(m)
    x = [ring.gen(i) for i in range(m)]
    xi = [ring.gen(m + i) for i in range(m)]
    out = []
    for i, L in enumerate(char_gens(FamilySpec(family, m)).gens):
        L = L.change_domain(RATIONALS)
        row0 = [x[i] if k == i else ring.zero for k in range(m)]
        try:
            R = exact_divide(L, x[i] * xi[i])
        except NotDivisible:
            out.append((row0, UnsupportedBranch(family, i + 1, L, "not divisible by x_i*xi_i")))
            continue
        row1 = [dict() for _ in range(m)]
        bad = False
        for exps, c in R.terms.items():
            beta = exps[m:]
            if sum(beta) != 1:
                bad = True
                break
            k = beta.index(1)
            row1[k][exps[:m] + (0,) * m] = c
        if bad:
            out.append((row0, UnsupportedBranch(family, i + 1, L, "cofactor is not linear in xi")))
        else:
            out.append((row0, [ring.from_terms(t) for t in row1]))
    return tuple(out)


def _check_eps(m, eps):
    eps = tuple(eps)
    if len(eps) != m or any(e not in (0, 1) for e in eps):
        raise ValueError(f"epsilon must be a 0/1 vector of length {m}")
    return eps


@dataclass
class EpsilonMatrix:
    family: str
    m: int
    eps: tuple
    matrix: PolyMatrix


def epsilon_matrix(family, m, eps):
    """Coefficient matrix of the linear system in ``xi`` for branch ``eps``."""
    eps = _check_eps(m, eps)
    rows = []
    for e, (row0, row1) in zip(eps, _branch_rows(family, m)):
        if e == 0:
            rows.append(row0)
        elif isinstance(row1, UnsupportedBranch):
            raise row1
        else:
            rows.append(row1)
    return EpsilonMatrix(family, m, eps, PolyMatrix(rows))


def epsilon_det(family, m, eps):
    return det_fraction_free(epsilon_matrix(family, m, eps).matrix)


def f_m(ring, indices, eps):
    """det of the matrix with ``1 - eps_r x_i`` on the diagonal and ``eps_r`` off it.

    Row ``r`` belongs to variable ``indices[r]``; the empty determinant is 1.
    """
    if len(indices) != len(eps):
        raise ValueError("indices and epsilon differ in length")
    k = len(indices)
    if k == 0:
        return ring.one
    rows = []
    for r, (i, e) in enumerate(zip(indices, eps)):
        rows.append([(1 - e * ring.gen(i)) if c == r else ring.const(e) for c in range(k)])
    return det_fraction_free(PolyMatrix(rows))


def f_all_ones_closed(ring, indices):
    """``(-1)^(k-1) ((1 - x_1) x_2..x_k + x_1 x_3..x_k + .. + x_1..x_(k-1))``."""
    xs = [ring.gen(i) for i in indices]
    k = len(xs)
    total = (1 - xs[0]) * prod(xs[1:], start=ring.one)
    for j in range(1, k):
        total = total + prod(xs[:j] + xs[j + 1 :], start=ring.one)
    return total if k % 2 else -total


def recurrence_check(m):
    """Exact check of every ``eps_j = 0`` projection identity and the all-ones form."""
    ring = sing_ring(m)
    idx = list(range(m))
    for eps in itertools.product((0, 1), repeat=m):
        f = f_m(ring, idx, eps)
        for j in range(m):
            if eps[j] == 0:
                sub = f_m(ring, idx[:j] + idx[j + 1 :], eps[:j] + eps[j + 1 :])
                if f != sub:
                    return False
    return f_m(ring, idx, (1,) * m) == f_all_ones_closed(ring, idx)


def _serial():
    return bool(os.environ.get("FORCE_SINGLE_THREAD"))


def _det_task(args):
    family, m, eps = args
    return epsilon_det(family, m, eps)


def epsilon_dets(family, m, jobs=1):
    """``[(eps, det)]`` over all ``eps`` in ``{0,1}^m``, in lexicographic order."""
    _check_family(family)
    all_eps = list(itertools.product((0, 1), repeat=m))
    if jobs > 1 and not _serial() and len(all_eps) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            dets = list(ex.map(_det_task, [(family, m, e) for e in all_eps]))
    else:
        dets = [epsilon_det(family, m, e) for e in all_eps]
    return list(zip(all_eps, dets))


def sing_product(family, m, cap=DEFAULT_CAP, jobs=1):
    """Product of all ``2^m`` branch determinants."""
    _check_family(family)
    if m > cap:
        raise ValueError(f"m = {m} exceeds the cap of {cap}")
    out = sing_ring(m).one
    for _, d in epsilon_dets(family, m, jobs):
        out = out * d
    return out


def normalize_factor(p):
    """Scale so the constant term is 1, or the lex-leading coefficient is 1 if there is none."""
    c = p.constant_coeff()
    if c:
        return p / c
    return p / p.leading_term()[1]


def subset_factor(family, ring, subset):
    """``1 - sum_S x`` (A) or ``prod_S x - sum_j prod_{S-j} x`` (B), normalized."""
    xs = [ring.gen(i) for i in subset]
    if family == "A":
        g = 1 - sum(xs, ring.zero)
    elif family == "B":
        g = prod(xs, start=ring.one)
        for j in range(len(xs)):
            g = g - prod(xs[:j] + xs[j + 1 :], start=ring.one)
    else:
        raise ValueError("closed forms exist only for the A and B families")
    return normalize_factor(g)


@dataclass
class SingularLocusResult:
    family: str
    m: int
    product: object
    factors: list
    multiplicities: list
    exactness: str

    def to_json(self):
        return {
            "family": self.family,
            "m": self.m,
            "exactness": self.exactness,
            "product": self.product.to_text(),
            "factors": [
                {"factor": f.to_text(), "multiplicity": k} for f, k in zip(self.factors, self.multiplicities)
            ],
        }


def _exactness(family):
    return CONTAINS_ONLY if PROVENANCE[family] == LOCAL_GB else EXACT


def closed_form_sing(family, m):
    """Closed-form factor list: each ``x_i`` with multiplicity ``2^m``, each subset factor once."""
    if family not in ("A", "B"):
        raise ValueError("closed forms exist only for the A and B families")
    ring = sing_ring(m)
    factors = [ring.gen(i) for i in range(m)]
    mults = [2**m] * m
    for size in range(1, m + 1):
        for subset in itertools.combinations(range(m), size):
            factors.append(subset_factor(family, ring, subset))
            mults.append(1)
    product = ring.one
    for f, k in zip(factors, mults):
        product = product * f**k
    return SingularLocusResult(family, m, product, factors, mults, _exactness(family))


def match_factors(product, result):
    """True iff dividing out every factor to its multiplicity leaves a nonzero constant."""
    r = product
    for f, k in zip(result.factors, result.multiplicities):
        for _ in range(k):
            try:
                r = exact_divide(r, f)
            except NotDivisible:
                return False
    return bool(r) and r.is_constant()


def singular_locus(family, m, cap=DEFAULT_CAP, jobs=1):
    """Computed product paired with the closed-form factorization (A and B)."""
    product = sing_product(family, m, cap, jobs)
    closed = closed_form_sing(family, m)
    return SingularLocusResult(family, m, product, closed.factors, closed.multiplicities, closed.exactness)


def has_nonzero_kernel(family, m, point):
    """Whether some branch matrix at the x-point is singular (exact rank over QQ)."""
    full = list(point) + [0] * m
    for eps in itertools.product((0, 1), repeat=m):
        vals = epsilon_matrix(family, m, eps).matrix.evaluate(full)
        if DomainMatrix(vals, (m, m), QQ).rank() < m:
            return True
    return False
