"""Left division, S-pairs and a Buchberger-criterion checker in the Weyl algebra.

The checker does not complete bases.  It takes a candidate basis and an
order, forms every S-pair (or the negated commutator when the two initial
monomials are coprime) and top-reduces it.  For the local order reduction
need not terminate, so it runs under an x-degree cap and reports
``bound_exceeded`` instead of looping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .orders import leading_key
from .weyl import WeylOp, commutator, weyl_mul


class Status(str, Enum):
    REDUCED_TO_ZERO = "reduced_to_zero"
    NONZERO_REMAINDER = "nonzero_remainder"
    BOUND_EXCEEDED = "bound_exceeded"


@dataclass
class ReductionStep:
    reducer: int
    multiplier: tuple
    coeff: object
    lead: tuple


@dataclass
class ReductionTrace:
    input: WeylOp
    steps: list = field(default_factory=list)
    remainder: WeylOp | None = None
    bound_exceeded: bool = False

    @property
    def status(self):
        if self.bound_exceeded:
            return Status.BOUND_EXCEEDED
        return Status.NONZERO_REMAINDER if self.remainder else Status.REDUCED_TO_ZERO

    def replay(self, G):
        """Recompute the remainder from the input and the recorded steps."""
        alg = self.input.algebra
        out = self.input
        for s in self.steps:
            mon = WeylOp(alg, {alg.ring.pack(s.multiplier): alg.domain.one})
            out = out - weyl_mul(mon, G[s.reducer]) * s.coeff
        return out

    def to_json(self):
        alg = self.input.algebra
        m = alg.m
        dom = alg.domain
        return {
            "status": self.status.value,
            "remainder": self.remainder.to_text(),
            "steps": [
                {
                    "reducer": s.reducer + 1,
                    "x": list(s.multiplier[:m]),
                    "d": list(s.multiplier[m:]),
                    "coeff": dom.format(s.coeff),
                }
                for s in self.steps
            ],
        }


def default_bound(P, G):
    """Largest x-degree among the inputs plus ``2m``."""
    m = P.algebra.m
    return max([P.x_degree()] + [g.x_degree() for g in G]) + 2 * m


def _divides(guard, d, k):
    return ((k | guard) - d) & guard == guard


def reduce(P, G, o, bound=None):
    """Top-reduce ``P`` by ``G`` under order ``o``.

    Each step removes the ``o``-leading monomial ``x^A xi^B`` of the running
    remainder using the first ``g`` whose initial monomial divides it,
    subtracting ``(c / lc(g)) * x^(A-a) d^(B-b) * g``.  ``bound`` caps the
    x-degree of the remainder for non-well-ordered orders.
    """
    if any(not g for g in G):
        raise ValueError("zero element in reducer list")
    alg = P.algebra
    if any(g.algebra != alg for g in G):
        raise ValueError("reducers from a different algebra")
    max_in = max([P.x_degree()] + [g.x_degree() for g in G])
    if bound is not None and bound < max_in:
        raise ValueError(f"bound {bound} below input x-degree {max_in}")
    if bound is None and not o.is_well_ordered:
        bound = max_in + 2 * alg.m
    ring = alg.ring
    unpack, guard = ring.unpack, ring.guard
    inits = []
    for g in G:
        k = leading_key(o, g)
        inits.append((k, g._t[k]))
    trace = ReductionTrace(P)
    r = P
    prev = None
    while r:
        k = leading_key(o, r)
        key_k = o.key(unpack(k))
        if prev is not None and not key_k < prev:
            raise RuntimeError("leading monomial failed to decrease during reduction")
        prev = key_k
        for j, (kg, lc) in enumerate(inits):
            if _divides(guard, kg, k):
                break
        else:
            break
        mult = k - kg
        prod = weyl_mul(WeylOp(alg, {mult: alg.domain.one}), G[j])
        if prod._t.get(k) != lc or leading_key(o, prod) != k:
            raise RuntimeError("order is not compatible with Weyl multiplication")
        coeff = r._t[k] / lc
        r = r - prod * coeff
        trace.steps.append(ReductionStep(j, unpack(mult), coeff, unpack(k)))
        if not o.is_well_ordered and r and r.x_degree() > bound:
            trace.bound_exceeded = True
            break
    trace.remainder = r
    return trace


def _lcm_key(ring, k1, k2):
    e1, e2 = ring.unpack(k1), ring.unpack(k2)
    return ring.pack(tuple(max(a, b) for a, b in zip(e1, e2)))


def s_pair(P, Q, o):
    """S-pair with both initial coefficients normalized to 1."""
    if not P or not Q:
        raise ValueError("S-pair of a zero operator")
    alg = P.algebra
    ring = alg.ring
    kp, kq = leading_key(o, P), leading_key(o, Q)
    lcm = _lcm_key(ring, kp, kq)
    one = alg.domain.one
    left = weyl_mul(WeylOp(alg, {lcm - kp: one}), P) * (one / P._t[kp])
    right = weyl_mul(WeylOp(alg, {lcm - kq: one}), Q) * (one / Q._t[kq])
    return left - right


def initials_coprime(P, Q, o):
    ring = P.algebra.ring
    e1 = ring.unpack(leading_key(o, P))
    e2 = ring.unpack(leading_key(o, Q))
    return not any(a and b for a, b in zip(e1, e2))


def coprime_shortcut(P, Q, o):
    """``-[P, Q]`` when the initial monomials are coprime, else ``None``.

    With coprime initials the S-pair reduces to ``-[P, Q]`` modulo ``P`` and
    ``Q``, so it suffices to reduce the commutator.
    """
    if not P or not Q:
        raise ValueError("shortcut for a zero operator")
    if not initials_coprime(P, Q, o):
        return None
    return -commutator(P, Q)


@dataclass
class PairResult:
    i: int
    j: int
    shortcut: bool
    target_zero: bool
    trace: ReductionTrace

    @property
    def status(self):
        return self.trace.status

    def to_json(self):
        out = {"i": self.i + 1, "j": self.j + 1, "shortcut": self.shortcut, "target_zero": self.target_zero}
        out.update(self.trace.to_json())
        return out


@dataclass
class GBReport:
    order: object
    pairs: list

    @property
    def overall(self):
        return all(p.status is Status.REDUCED_TO_ZERO for p in self.pairs)

    @property
    def bound_exceeded(self):
        return any(p.status is Status.BOUND_EXCEEDED for p in self.pairs)

    def to_json(self):
        return {
            "order": self.order.to_json(),
            "overall": self.overall,
            "pairs": [p.to_json() for p in self.pairs],
        }


def check_pair(G, i, j, o, bound=None, use_shortcut=True):
    target = coprime_shortcut(G[i], G[j], o) if use_shortcut else None
    shortcut = target is not None
    if not shortcut:
        target = s_pair(G[i], G[j], o)
    return PairResult(i, j, shortcut, not target, reduce(target, G, o, bound))


def buchberger_check(G, o, bound=None, use_shortcut=True):
    """Reduce every pair's S-element; ``overall`` is true iff all reduce to zero."""
    if any(not g for g in G):
        raise ValueError("zero element in candidate basis")
    pairs = [
        check_pair(G, i, j, o, bound, use_shortcut)
        for i in range(len(G))
        for j in range(i + 1, len(G))
    ]
    return GBReport(o, pairs)
