import itertools
import json
import random
from fractions import Fraction

import pytest

from conftest import leibniz_det
from lauricella_dmod.polyalg import det_cofactor
from lauricella_dmod.singlocus import (
    CONTAINS_ONLY,
    EXACT,
    SingularLocusResult,
    UnsupportedBranch,
    closed_form_sing,
    epsilon_det,
    epsilon_dets,
    epsilon_matrix,
    f_all_ones_closed,
    f_m,
    has_nonzero_kernel,
    match_factors,
    normalize_factor,
    recurrence_check,
    sing_product,
    sing_ring,
    singular_locus,
)


def x_product(ring, m):
    out = ring.one
    for i in range(m):
        out = out * ring.gen(i)
    return out


# epsilon matrices ----------------------------------------------------------


def test_a_matrix_shape():
    ring = sing_ring(2)
    x1, x2 = ring.gen(0), ring.gen(1)
    M = epsilon_matrix("A", 2, (1, 0)).matrix
    assert M.rows == [[x1 * (1 - x1), -x1 * x2], [ring.zero, x2]]


def test_b_matrix_shape():
    ring = sing_ring(2)
    x1, x2 = ring.gen(0), ring.gen(1)
    M = epsilon_matrix("B", 2, (1, 1)).matrix
    assert M.rows == [[x1 * (1 - x1), x2], [x1, x2 * (1 - x2)]]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_a_determinants(m):
    ring = sing_ring(m)
    for eps in itertools.product((0, 1), repeat=m):
        expected = x_product(ring, m) * (1 - sum((ring.gen(i) for i in range(m) if eps[i]), ring.zero))
        assert epsilon_det("A", m, eps) == expected


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_b_determinants(m):
    ring = sing_ring(m)
    for eps in itertools.product((0, 1), repeat=m):
        support = [i for i in range(m) if eps[i]]
        f = f_all_ones_closed(ring, support) if support else ring.one
        assert epsilon_det("B", m, eps) == x_product(ring, m) * f


@pytest.mark.parametrize("family", ["A", "B"])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_determinants_against_cofactor_oracles(family, m):
    ring = sing_ring(m)
    for eps in itertools.product((0, 1), repeat=m):
        M = epsilon_matrix(family, m, eps).matrix
        d = epsilon_det(family, m, eps)
        assert d == det_cofactor(M)
        if m <= 3:
            assert d == leibniz_det(M.rows, ring)


def test_bad_epsilon():
    with pytest.raises(ValueError):
        epsilon_matrix("A", 2, (1, 2))
    with pytest.raises(ValueError):
        epsilon_matrix("A", 2, (1,))


# f_m -----------------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_recurrences(m):
    assert recurrence_check(m)


def test_two_variable_all_ones():
    ring = sing_ring(2)
    x1, x2 = ring.gen(0), ring.gen(1)
    assert f_m(ring, [0, 1], (1, 1)) == x1 * x2 - x1 - x2


def test_f_m_length_mismatch():
    with pytest.raises(ValueError):
        f_m(sing_ring(2), [0, 1], (1,))


# products and closed forms -------------------------------------------------


@pytest.mark.parametrize("family", ["A", "B"])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_products_match_closed_forms(family, m):
    product = sing_product(family, m)
    closed = closed_form_sing(family, m)
    assert match_factors(product, closed)
    assert product in (closed.product, -closed.product)


def test_closed_form_multiplicities():
    closed = closed_form_sing("A", 3)
    assert closed.multiplicities == [8, 8, 8, 1, 1, 1, 1, 1, 1, 1]
    assert [f.to_text() for f in closed.factors[3:6]] == ["-x1 + 1", "-x2 + 1", "-x3 + 1"]
    closed_b = closed_form_sing("B", 2)
    assert closed_b.factors[-1].to_text() == "x1*x2 - x1 - x2"


def test_mismatch_detected():
    closed = closed_form_sing("A", 2)
    wrong = SingularLocusResult("A", 2, None, closed.factors, [5] + closed.multiplicities[1:], closed.exactness)
    assert not match_factors(sing_product("A", 2), wrong)
    b_closed = closed_form_sing("B", 2)
    assert not match_factors(sing_product("A", 2), b_closed)


@pytest.mark.parametrize("family", ["A", "B"])
def test_permutation_symmetry(family):
    ring = sing_ring(3)
    product = sing_product(family, 3)
    for perm in itertools.permutations(range(3)):
        mapping = {f"x{i + 1}": f"x{perm[i] + 1}" for i in range(3)}
        mapping.update({f"xi{i + 1}": f"xi{perm[i] + 1}" for i in range(3)})
        assert product.rename(mapping, ring) == product


def test_parallel_matches_serial():
    assert epsilon_dets("A", 3, jobs=2) == epsilon_dets("A", 3, jobs=1)


def test_cap():
    with pytest.raises(ValueError):
        sing_product("A", 3, cap=2)


def test_exactness_flags():
    assert closed_form_sing("A", 2).exactness == CONTAINS_ONLY
    assert closed_form_sing("B", 2).exactness == EXACT
    with pytest.raises(ValueError):
        closed_form_sing("C", 2)


def test_result_json():
    data = singular_locus("B", 2).to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["exactness"] == "exact"
    assert {"factor": "x1*x2 - x1 - x2", "multiplicity": 1} in data["factors"]


def test_normalize_factor():
    ring = sing_ring(2)
    x1, x2 = ring.gen(0), ring.gen(1)
    assert normalize_factor(3 * x1 - 3) == 1 - x1
    assert normalize_factor(x1 + x2 - x1 * x2) == x1 * x2 - x1 - x2


# the C family --------------------------------------------------------------


def test_c_branch_unsupported_for_two_variables():
    with pytest.raises(UnsupportedBranch) as info:
        sing_product("C", 2)
    assert info.value.family == "C"
    assert info.value.polynomial.total_degree() == 5


def test_c_in_one_variable():
    ring = sing_ring(1)
    x1 = ring.gen(0)
    assert sing_product("C", 1) == x1 * x1 * (1 - x1)
    assert sing_product("C", 1) == sing_product("A", 1)


# sample points -------------------------------------------------------------


def sample_points(family, m, count, seed):
    """Random nonzero rational points; every other one lies on a closed-form factor."""
    rng = random.Random(seed)

    def q():
        v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        return v or Fraction(1, 7)

    points = []
    for k in range(count):
        p = [q() for _ in range(m)]
        if k % 2 and family == "A":
            # 1 - sum_S x = 0 for a random nonempty subset S
            S = rng.sample(range(m), rng.randint(1, m))
            rest = sum(p[i] for i in S[1:])
            if rest != 1:
                p[S[0]] = 1 - rest
        elif k % 4 == 1:
            p[rng.randrange(m)] = Fraction(1)
        elif k % 4 == 3 and p[1] != 1:
            # x1*x2 - x1 - x2 = 0
            p[0] = p[1] / (p[1] - 1)
        points.append(p)
    return points


@pytest.mark.parametrize("family", ["A", "B"])
def test_sample_point_solvability(family):
    m = 3
    product = sing_product(family, m)
    zero_count = 0
    for p in sample_points(family, m, 20, seed=7):
        vanishes = product.evaluate(list(p) + [0] * m) == 0
        zero_count += vanishes
        assert has_nonzero_kernel(family, m, p) == vanishes
    assert 0 < zero_count < 20
