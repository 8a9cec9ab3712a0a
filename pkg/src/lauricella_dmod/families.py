"""Lauricella operator families in theta-form and normal form.

``A``:  t_i(t_i + c_i - 1) - x_i(t_1+..+t_m + a)(t_i + b_i)
``B``:  t_i(t_1+..+t_m + c - 1) - x_i(t_i + a_i)(t_i + b_i)
``C``:  t_i(t_i + c_i - 1) - x_i(t_1+..+t_m + a)(t_1+..+t_m + b)
``APrime``:  the A family after ``X_i = 1/x_i``, cleared of the unit
factor ``-1/X_i``:  X_i t_i(-t_i + c_i - 1) + (t_1+..+t_m - a)(t_i - b_i)
with ``t_i`` the Euler operator in ``X_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .weyl import Param, Theta, XVar, euler_expand, theta_sum, weyl_algebra

FAMILIES = ("A", "B", "C", "APrime")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    m: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.m < 1:
            raise ValueError("dimension must be at least 1")

    @property
    def xname(self):
        return "X" if self.family == "APrime" else "x"

    @property
    def algebra(self):
        return weyl_algebra(self.m, self.xname)

    @property
    def parameter_names(self):
        m = self.m
        idx = range(1, m + 1)
        if self.family in ("A", "APrime"):
            return ("a",) + tuple(f"b{i}" for i in idx) + tuple(f"c{i}" for i in idx)
        if self.family == "B":
            return tuple(f"a{i}" for i in idx) + tuple(f"b{i}" for i in idx) + ("c",)
        return ("a", "b") + tuple(f"c{i}" for i in idx)


def theta_expr(spec, i):
    """The defining theta-expression of the ``i``-th operator (``1 <= i <= m``)."""
    if not 1 <= i <= spec.m:
        raise IndexError(f"operator index {i} outside 1..{spec.m}")
    t, s = Theta(i), theta_sum(spec.m)
    fam = spec.family
    if fam == "A":
        return t * (t + Param(f"c{i}") - 1) - XVar(i) * (s + Param("a")) * (t + Param(f"b{i}"))
    if fam == "B":
        return t * (s + Param("c") - 1) - XVar(i) * (t + Param(f"a{i}")) * (t + Param(f"b{i}"))
    if fam == "C":
        return t * (t + Param(f"c{i}") - 1) - XVar(i) * (s + Param("a")) * (s + Param("b"))
    return XVar(i) * t * (-t + Param(f"c{i}") - 1) + (s - Param("a")) * (t - Param(f"b{i}"))


def theta_text(spec, i):
    return theta_expr(spec, i).text(spec.xname)


def make_operator(spec, i):
    """Normal-ordered ``i``-th operator of the family."""
    return euler_expand(theta_expr(spec, i), spec.algebra)


def operator_family(spec):
    return [make_operator(spec, i) for i in range(1, spec.m + 1)]
