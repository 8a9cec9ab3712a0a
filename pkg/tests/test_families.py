import itertools

import pytest

from lauricella_dmod.families import FAMILIES, FamilySpec, make_operator, operator_family, theta_text
from lauricella_dmod.orders import GLOBAL01, initial_form_01, initial_term
from lauricella_dmod.weyl import Param, Theta, XVar, apply_to_monomial, euler_expand


def test_gauss_b_operator():
    spec = FamilySpec("B", 1)
    alg = spec.algebra
    p = alg.param
    a1, b1, c = p("a1"), p("b1"), p("c")
    expected = (
        alg.element({((2,), (2,)): 1})
        + c * alg.theta(1)
        - alg.element({((3,), (2,)): 1})
        - (a1 + b1 + 1) * alg.element({((2,), (1,)): 1})
        - a1 * b1 * alg.x(1)
    )
    assert make_operator(spec, 1) == expected


def test_a_initial_form_m2():
    spec = FamilySpec("A", 2)
    x1, x2, xi1, xi2 = spec.algebra.ring.gens()
    L1 = initial_form_01(make_operator(spec, 1))
    assert L1 == x1 * xi1 * (x1 * xi1 - x1 * (x1 * xi1 + x2 * xi2))


def test_c_operator_is_second_order():
    assert make_operator(FamilySpec("C", 2), 2).d_degree() == 2


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_degrees(family, m):
    for op in operator_family(FamilySpec(family, m)):
        assert op.d_degree() == 2
        assert op.x_degree() <= 3


def test_operators_distinct():
    ops = operator_family(FamilySpec("B", 3))
    assert len(ops) == 3
    assert all(ops[i] != ops[j] for i, j in itertools.combinations(range(3), 2))


@pytest.mark.parametrize("m", [2, 3])
def test_coordinate_changed_initial_monomials(m):
    for i, op in enumerate(operator_family(FamilySpec("APrime", m))):
        exps, _ = initial_term(GLOBAL01, op)
        assert exps == tuple(3 if k == i else 0 for k in range(m)) + tuple(2 if k == i else 0 for k in range(m))


def test_a_and_c_agree_in_one_variable():
    a_op = make_operator(FamilySpec("A", 1), 1)
    c_op = make_operator(FamilySpec("C", 1), 1)
    dom = a_op.algebra.domain
    b, b1 = dom.gen("b"), dom.gen("b1")

    def rename(c):
        return dom.field.from_expr(c.as_expr().subs(b1.as_expr(), b.as_expr()))

    assert a_op != c_op
    assert a_op.map_coefficients(rename) == c_op


def test_bad_index():
    with pytest.raises(IndexError):
        make_operator(FamilySpec("A", 2), 3)
    with pytest.raises(ValueError):
        FamilySpec("D", 2)
    with pytest.raises(ValueError):
        FamilySpec("A", 0)


def test_parameter_sets():
    assert FamilySpec("A", 2).parameter_names == ("a", "b1", "b2", "c1", "c2")
    assert FamilySpec("B", 2).parameter_names == ("a1", "a2", "b1", "b2", "c")
    assert FamilySpec("C", 2).parameter_names == ("a", "b", "c1", "c2")


def test_theta_text():
    assert theta_text(FamilySpec("B", 2), 1) == "t1*(t1+t2+c-1) - x1*(t1+a1)*(t1+b1)"
    assert theta_text(FamilySpec("APrime", 2), 2) == "X2*t2*(-t2+c2-1) + (t1+t2-a)*(t2-b2)"


# coordinate change X_i = 1/x_i ---------------------------------------------

LATTICE = list(itertools.product(range(-3, 4), repeat=2))


def changed_image(a_op, i, n):
    """``-X_i * (l_i^A x^n)`` rewritten in ``X = 1/x``, as ``{exponent: coeff}``."""
    out = {}
    for idx, c in apply_to_monomial(a_op, n, laurent=True):
        k = tuple(-v + (1 if j == i else 0) for j, v in enumerate(idx))
        out[k] = -c
    return out


def transformed_matches(op, a_op, i):
    dom = op.algebra.domain
    for n in LATTICE:
        got = dict(apply_to_monomial(op, tuple(-v for v in n), laurent=True))
        want = {k: dom.convert(v) for k, v in changed_image(a_op, i, n).items()}
        if got != want:
            return False
    return True


@pytest.mark.parametrize("i", [0, 1])
def test_coordinate_change_on_laurent_monomials(i):
    # Operators on Laurent monomials are determined by their action, so
    # agreement on a lattice box of exponents is an exact identity check.
    a_op = make_operator(FamilySpec("A", 2), i + 1)
    p_op = make_operator(FamilySpec("APrime", 2), i + 1)
    assert transformed_matches(p_op, a_op, i)


def test_uncoupled_variant_is_not_the_transform():
    # (t_i - a) in place of (t_1 + ... + t_m - a) loses the coupling.
    spec = FamilySpec("APrime", 2)
    t = Theta(1)
    variant = XVar(1) * t * (-t + Param("c1") - 1) + (t - Param("a")) * (t - Param("b1"))
    a_op = make_operator(FamilySpec("A", 2), 1)
    assert not transformed_matches(euler_expand(variant, spec.algebra), a_op, 0)


def test_coordinate_changed_symbol_is_b_shaped():
    spec = FamilySpec("APrime", 2)
    X1, X2, xi1, xi2 = spec.algebra.ring.gens()
    L1 = initial_form_01(make_operator(spec, 1))
    assert L1 == X1 * xi1 * (X1 * (1 - X1) * xi1 + X2 * xi2)
