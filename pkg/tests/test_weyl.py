import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import weyl_ops
from lauricella_dmod.families import FamilySpec, operator_family
from lauricella_dmod.weyl import (
    Param,
    Theta,
    WeylOp,
    XVar,
    apply_to_monomial,
    commutator,
    euler_expand,
    theta_sum,
    weyl_algebra,
    weyl_mul,
)

A2 = weyl_algebra(2)
A3 = weyl_algebra(3)


def act(P, poly):
    """Apply ``P`` to a polynomial given as ``{multi-index: coeff}``."""
    out = {}
    for n, c in poly.items():
        for idx, v in apply_to_monomial(P, n):
            out[idx] = out.get(idx, 0) + c * v
    return {k: v for k, v in out.items() if v}


# products ------------------------------------------------------------------


def test_defining_relation():
    assert weyl_mul(A2.d(1), A2.x(1)) == A2.x(1) * A2.d(1) + 1
    assert weyl_mul(A2.x(1), A2.d(1)) == A2.theta(1)


def test_disjoint_eulers_commute():
    expected = A2.element({((1, 1), (1, 1)): 1})
    assert weyl_mul(A2.theta(1), A2.theta(2)) == expected


def test_theta_squared():
    expected = A2.element({((2, 0), (2, 0)): 1, ((1, 0), (1, 0)): 1})
    assert weyl_mul(A2.theta(1), A2.theta(1)) == expected


def test_other_generators_commute():
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert not commutator(A3.x(i), A3.x(j))
            assert not commutator(A3.d(i), A3.d(j))
            if i != j:
                assert not commutator(A3.d(i), A3.x(j))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        weyl_mul(A2.x(1), A3.x(1))


@given(weyl_ops(A2), weyl_ops(A2), weyl_ops(A2))
def test_associativity(P, Q, R):
    assert weyl_mul(weyl_mul(P, Q), R) == weyl_mul(P, weyl_mul(Q, R))


@given(weyl_ops(A3, max_exp=1), weyl_ops(A3, max_exp=1), weyl_ops(A3, max_exp=1))
def test_associativity_three_variables(P, Q, R):
    assert weyl_mul(weyl_mul(P, Q), R) == weyl_mul(P, weyl_mul(Q, R))


@given(weyl_ops(A2), weyl_ops(A2), weyl_ops(A2))
def test_bilinear(P, Q, R):
    assert weyl_mul(P + Q, R) == weyl_mul(P, R) + weyl_mul(Q, R)
    assert weyl_mul(P, Q + R) == weyl_mul(P, Q) + weyl_mul(P, R)


@given(weyl_ops(A2), weyl_ops(A2), st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_action_is_a_homomorphism(P, Q, n):
    assert act(weyl_mul(P, Q), {n: 1}) == act(P, act(Q, {n: 1}))


# commutators ---------------------------------------------------------------


def test_x_d_commutator():
    assert commutator(A2.x(1), A2.d(1)) == A2.const(-1)


@given(weyl_ops(A2), weyl_ops(A2))
def test_antisymmetry(P, Q):
    assert commutator(P, Q) == -commutator(Q, P)
    assert not commutator(P, P)


@pytest.mark.parametrize("family", ["A", "C"])
def test_family_commutators_vanish(family):
    ops = operator_family(FamilySpec(family, 3))
    for i in range(3):
        for j in range(i + 1, 3):
            assert not commutator(ops[i], ops[j])


def test_b_commutator_closed_form():
    spec = FamilySpec("B", 2)
    l1, l2 = operator_family(spec)
    t1, t2 = Theta(1), Theta(2)
    expr = XVar(1) * (t1 + Param("a1")) * (t1 + Param("b1")) * t2 - XVar(2) * (t2 + Param("a2")) * (
        t2 + Param("b2")
    ) * t1
    assert commutator(l1, l2) == euler_expand(expr, spec.algebra)


# Euler expressions ---------------------------------------------------------


def test_expand_gauss_left_factor():
    c1 = A2.param("c1")
    t = Theta(1)
    got = euler_expand(t * (t + Param("c1") - 1), A2)
    assert got == A2.element({((2, 0), (2, 0)): 1}) + c1 * A2.theta(1)


def test_expand_theta_sum():
    assert euler_expand(theta_sum(2), A2) == A2.theta(1) + A2.theta(2)


def test_expand_with_x_factor():
    a1, b1 = A2.param("a1"), A2.param("b1")
    t = Theta(1)
    got = euler_expand(XVar(1) * (t + Param("a1")) * (t + Param("b1")), A2)
    expected = (
        A2.element({((3, 0), (2, 0)): 1})
        + (a1 + b1 + 1) * A2.element({((2, 0), (1, 0)): 1})
        + a1 * b1 * A2.x(1)
    )
    assert got == expected


@given(
    st.lists(st.tuples(st.integers(1, 2), st.integers(-3, 3)), min_size=1, max_size=3),
    st.tuples(st.integers(0, 5), st.integers(0, 5)),
)
def test_eigenvalue_identity(factors, n):
    # f(theta) = prod (theta_i + k); on x^n it acts by prod (n_i + k).
    expr = None
    value = 1
    for i, k in factors:
        f = Theta(i) + k
        expr = f if expr is None else expr * f
        value *= n[i - 1] + k
    got = apply_to_monomial(euler_expand(expr, A2), n)
    assert got == ([(n, value)] if value else [])


# action on monomials -------------------------------------------------------


def test_derivative_on_monomial():
    assert apply_to_monomial(A2.d(1), (3, 0)) == [((2, 0), 3)]
    assert apply_to_monomial(A2.d(1), (0, 2)) == []


def test_euler_eigenvalue():
    assert apply_to_monomial(A2.theta(1), (4, 7)) == [((4, 7), 4)]


def test_b_operator_on_monomial():
    spec = FamilySpec("B", 2)
    dom = spec.algebra.domain
    l1 = operator_family(spec)[0]
    a1, b1, c = (dom.gen(n) for n in ("a1", "b1", "c"))
    got = dict(apply_to_monomial(l1, (1, 1)))
    assert got == {(1, 1): 1 * (2 + c - 1), (2, 1): -(1 + a1) * (1 + b1)}


def test_laurent_action():
    assert apply_to_monomial(A2.theta(1), (-2, 1), laurent=True) == [((-2, 1), -2)]
    with pytest.raises(ValueError):
        apply_to_monomial(A2.theta(1), (-2, 1))


# text and JSON -------------------------------------------------------------


def test_normal_form_text():
    c1 = A2.param("c1")
    op = A2.element({((2, 0), (2, 0)): 1}) + c1 * A2.theta(1)
    assert op.to_text() == "x1^2*dx1^2 + c1*x1*dx1"


def test_theta_form_text():
    t1, s = Theta(1), theta_sum(2)
    expr = t1 * (t1 + Param("c1") - 1) - XVar(1) * (s + Param("a")) * (t1 + Param("b1"))
    assert expr.text() == "t1*(t1+c1-1) - x1*(t1+t2+a)*(t1+b1)"


@given(weyl_ops(A2))
def test_json_round_trip(P):
    assert WeylOp.from_json(P.to_json()) == P
