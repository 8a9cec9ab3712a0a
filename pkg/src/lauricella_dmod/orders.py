"""Monomial orders on the ``(x, xi)`` exponent lattice.

Three shapes are supported:

``global01``
    compare total xi-degree, then total x-degree, then lex.  A term order.
``weight``
    compare ``w . (alpha, beta)``, then an optional secondary weight, then
    lex.  A term order for nonnegative ``w``.
``local01``
    compare total xi-degree, then the *smaller* total x-degree wins, then
    lex.  Multiplicative and total but not a well-order (``x1 < 1``).

Lex is fixed as ``x1 > ... > xm > xi1 > ... > xim``.  Monomials are flat
exponent tuples ``(alpha_1..alpha_m, beta_1..beta_m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyalg import CPoly

KINDS = ("global01", "weight", "local01")


def _rational(v):
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


@dataclass(frozen=True)
class OrderSpec:
    kind: str
    w: tuple | None = None
    tiebreak_w: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weight":
            if self.w is None:
                raise ValueError("weight order needs a weight vector")
            w = tuple(_rational(v) for v in self.w)
            if any(v < 0 for v in w):
                raise ValueError("weight vector entries must be nonnegative")
            object.__setattr__(self, "w", w)
            if self.tiebreak_w is not None:
                tw = tuple(_rational(v) for v in self.tiebreak_w)
                if any(v < 0 for v in tw) or len(tw) != len(w):
                    raise ValueError("secondary weight must be nonnegative and match w in length")
                object.__setattr__(self, "tiebreak_w", tw)
        elif self.w is not None or self.tiebreak_w is not None:
            raise ValueError(f"{self.kind} takes no weight vector")

    @property
    def is_well_ordered(self):
        return self.kind != "local01"

    def key(self, exps):
        """Sort key: larger key means larger monomial."""
        n = len(exps)
        m = n // 2
        if self.kind == "global01":
            return (sum(exps[m:]), sum(exps[:m]), exps)
        if self.kind == "local01":
            return (sum(exps[m:]), -sum(exps[:m]), exps)
        if len(self.w) != n:
            raise ValueError(f"weight vector has length {len(self.w)}, monomial {n}")
        primary = sum(wi * e for wi, e in zip(self.w, exps))
        if self.tiebreak_w is None:
            return (primary, exps)
        return (primary, sum(wi * e for wi, e in zip(self.tiebreak_w, exps)), exps)

    def to_json(self):
        if self.kind == "weight":
            out = {"kind": "weight", "w": [str(v) for v in self.w]}
            if self.tiebreak_w is not None:
                out["tiebreak_w"] = [str(v) for v in self.tiebreak_w]
            return out
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, data):
        return cls(data["kind"], data.get("w"), data.get("tiebreak_w"))

    def __str__(self):
        if self.kind == "weight":
            s = "weight(" + ",".join(str(v) for v in self.w) + ")"
            if self.tiebreak_w is not None:
                s += " then (" + ",".join(str(v) for v in self.tiebreak_w) + ")"
            return s
        return self.kind


GLOBAL01 = OrderSpec("global01")
LOCAL01 = OrderSpec("local01")


def weight_order(w, tiebreak_w=None):
    return OrderSpec("weight", tuple(w), None if tiebreak_w is None else tuple(tiebreak_w))


def compare(o, m1, m2):
    """Return -1, 0 or 1 as ``m1 <, ==, > m2`` under ``o``."""
    m1, m2 = tuple(m1), tuple(m2)
    if len(m1) != len(m2):
        raise ValueError("monomials from different rings")
    k1, k2 = o.key(m1), o.key(m2)
    return (k1 > k2) - (k1 < k2)


def leading_key(o, P):
    """Packed key of the ``o``-greatest monomial of ``P`` (a WeylOp or CPoly)."""
    if not P:
        raise ValueError("the zero element has no initial term")
    ring = P.algebra.ring if hasattr(P, "algebra") else P.ring
    unpack = ring.unpack
    return max(P._t, key=lambda k: o.key(unpack(k)))


def initial_term(o, P):
    """``(exponents, coeff)`` of the ``o``-greatest monomial of ``P``; ``d`` read as ``xi``."""
    k = leading_key(o, P)
    ring = P.algebra.ring if hasattr(P, "algebra") else P.ring
    return ring.unpack(k), P._t[k]


def initial_form_01(P):
    """Sum of the terms of maximal total ``d``-degree, as a polynomial in ``(x, xi)``."""
    if not P:
        raise ValueError("the zero operator has no initial form")
    ring = P.algebra.ring
    m = P.algebra.m
    degs = {k: sum(e[m:]) for k in P._t for e in [ring.unpack(k)]}
    top = max(degs.values())
    return CPoly(ring, {k: c for k, c in P._t.items() if degs[k] == top})


def weight_cone_contains(m, w):
    """Whether ``w`` makes ``x_i^3 xi_i^2`` the initial term of every B-family operator.

    Conditions: ``w_i > 0``, ``w_{m+i} >= 0`` and
    ``2 w_i - w_k + w_{m+i} - w_{m+k} > 0`` for all ``i`` and ``k != i``.
    """
    if len(w) != 2 * m:
        raise ValueError(f"weight vector must have length {2 * m}")
    w = [_rational(v) for v in w]
    for i in range(m):
        if not w[i] > 0 or w[m + i] < 0:
            return False
        for k in range(m):
            if k != i and not 2 * w[i] - w[k] + w[m + i] - w[m + k] > 0:
                return False
    return True


def cone_violations(m, w):
    """List of violated cone inequalities, as readable strings."""
    w = [_rational(v) for v in w]
    out = []
    for i in range(m):
        if not w[i] > 0:
            out.append(f"w{i + 1} > 0")
        if w[m + i] < 0:
            out.append(f"w{m + i + 1} >= 0")
        for k in range(m):
            if k != i and not 2 * w[i] - w[k] + w[m + i] - w[m + k] > 0:
                out.append(f"2*w{i + 1} - w{k + 1} + w{m + i + 1} - w{m + k + 1} > 0")
    return out
