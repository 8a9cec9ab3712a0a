"""The Weyl algebra ``D = K[x1..xm]<dx1..dxm>`` in normal-ordered form.

Every operator is a finite sum ``coeff * x^alpha * d^beta`` with all ``x``
to the left of all ``d``.  Coefficients are parameter rational functions.
Monomials share the packed keys of the commutative ring in ``(x, xi)``, so
replacing ``d`` by ``xi`` (the principal-symbol map on terms) is free.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import kernels
from .polyalg import BITS, CPoly, format_terms, param_domain, xxi_ring


class WeylAlgebra:
    """Weyl algebra on ``m`` variables named ``{xname}1..{xname}m``."""

    def __init__(self, m, xname="x"):
        if m < 1:
            raise ValueError("dimension must be at least 1")
        self.m = m
        self.xname = xname
        self.domain = param_domain(m)
        self.ring = xxi_ring(m, self.domain, xname)

    def __eq__(self, other):
        return isinstance(other, WeylAlgebra) and (self.m, self.xname) == (other.m, other.xname)

    def __hash__(self):
        return hash((self.m, self.xname))

    def __repr__(self):
        return f"WeylAlgebra(m={self.m}, xname={self.xname!r})"

    def __reduce__(self):
        return (weyl_algebra, (self.m, self.xname))

    def _check(self, i):
        if not 1 <= i <= self.m:
            raise IndexError(f"variable index {i} outside 1..{self.m}")

    def _unit(self, pos):
        return 1 << (BITS * (2 * self.m - 1 - pos))

    @property
    def zero(self):
        return WeylOp(self, {})

    @property
    def one(self):
        return WeylOp(self, {0: self.domain.one})

    def const(self, c):
        c = self.domain.convert(c)
        return WeylOp(self, {0: c} if c else {})

    def param(self, name):
        return WeylOp(self, {0: self.domain.gen(name)})

    def x(self, i):
        self._check(i)
        return WeylOp(self, {self._unit(i - 1): self.domain.one})

    def d(self, i):
        self._check(i)
        return WeylOp(self, {self._unit(self.m + i - 1): self.domain.one})

    def theta(self, i):
        self._check(i)
        return WeylOp(self, {self._unit(i - 1) + self._unit(self.m + i - 1): self.domain.one})

    def element(self, terms):
        """Build from ``{(alpha, beta): coeff}`` read as normal-ordered terms."""
        flat = {tuple(a) + tuple(b): c for (a, b), c in terms.items()}
        return WeylOp(self, self.ring.from_terms(flat)._t)

    def from_symbol(self, p):
        """Normal-ordered operator whose terms are those of ``p`` with ``xi -> d``."""
        if p.ring != self.ring:
            raise ValueError("polynomial is not in this algebra's (x, xi) ring")
        return WeylOp(self, dict(p._t))


@lru_cache(maxsize=None)
def weyl_algebra(m, xname="x"):
    return WeylAlgebra(m, xname)


class WeylOp:
    """Immutable normal-ordered differential operator."""

    __slots__ = ("algebra", "_t")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self._t = terms

    def _coerce(self, other):
        if isinstance(other, WeylOp):
            if other.algebra != self.algebra:
                raise ValueError(f"{self.algebra!r} vs {other.algebra!r}")
            return other
        if isinstance(other, EulerExpr):
            return euler_expand(other, self.algebra)
        return self.algebra.const(other)

    @property
    def terms(self):
        m = self.algebra.m
        return {(e[:m], e[m:]): c for e, c in self.flat_terms().items()}

    def flat_terms(self):
        """``{(alpha_1..alpha_m, beta_1..beta_m): coeff}``."""
        unpack = self.algebra.ring.unpack
        return {unpack(k): c for k, c in self._t.items()}

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.algebra == other.algebra and self._t == other._t
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._t == other._t

    __hash__ = None

    def __neg__(self):
        return WeylOp(self.algebra, {k: -c for k, c in self._t.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return WeylOp(self.algebra, out)

    def __radd__(self, other):
        return self._coerce(other) + self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (WeylOp, EulerExpr)):
            return weyl_mul(self, self._coerce(other))
        c = self.algebra.domain.convert(other)
        return WeylOp(self.algebra, {k: v * c for k, v in self._t.items()} if c else {})

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.algebra.one
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        return self * c

    def x_degree(self):
        m = self.algebra.m
        return max((sum(e[:m]) for e in self.flat_terms()), default=-1)

    def d_degree(self):
        m = self.algebra.m
        return max((sum(e[m:]) for e in self.flat_terms()), default=-1)

    def symbol(self):
        """All terms as a commutative polynomial in ``(x, xi)``."""
        return CPoly(self.algebra.ring, dict(self._t))

    def map_coefficients(self, fn):
        dom = self.algebra.domain
        out = {}
        for k, c in self._t.items():
            v = dom.convert(fn(c))
            if v:
                out[k] = v
        return WeylOp(self.algebra, out)

    def monomial_text(self, exps):
        m = self.algebra.m
        xn = self.algebra.xname
        names = [f"{xn}{i}" for i in range(1, m + 1)] + [f"d{xn}{i}" for i in range(1, m + 1)]
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)

    def to_text(self):
        unpack = self.algebra.ring.unpack
        pairs = ((self.monomial_text(unpack(k)), self._t[k]) for k in sorted(self._t, reverse=True))
        return format_terms(pairs, self.algebra.domain)

    __str__ = to_text

    def __repr__(self):
        return f"WeylOp({self.to_text()})"

    def to_json(self):
        dom = self.algebra.domain
        m = self.algebra.m
        unpack = self.algebra.ring.unpack
        return {
            "m": m,
            "xname": self.algebra.xname,
            "terms": [
                {"x": list(e[:m]), "d": list(e[m:]), "coeff": dom.format(self._t[k])}
                for k in sorted(self._t, reverse=True)
                for e in [unpack(k)]
            ],
        }

    @classmethod
    def from_json(cls, data):
        alg = weyl_algebra(data["m"], data.get("xname", "x"))
        dom = alg.domain
        return alg.element({(tuple(t["x"]), tuple(t["d"])): dom.parse(t["coeff"]) for t in data["terms"]})


def weyl_mul(P, Q):
    """Normal-ordered product ``P*Q``."""
    if P.algebra != Q.algebra:
        raise ValueError(f"{P.algebra!r} vs {Q.algebra!r}")
    if not P or not Q:
        return P.algebra.zero
    return WeylOp(P.algebra, kernels.weyl_mul(P._t, Q._t, P.algebra.m, BITS))


def commutator(P, Q):
    """``[P, Q] = PQ - QP``."""
    return weyl_mul(P, Q) - weyl_mul(Q, P)


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def apply_to_monomial(P, n, laurent=False):
    """``P . x^n`` as a sorted list of ``(multi-index, coeff)``.

    ``x^alpha d^beta . x^n = prod_i n_i(n_i-1)..(n_i-beta_i+1) x^(n-beta+alpha)``.
    With ``laurent=True`` the exponents may be negative and the same falling
    factorial formula is used for Laurent monomials.
    """
    m = P.algebra.m
    if len(n) != m:
        raise ValueError(f"multi-index must have length {m}")
    if not laurent and any(v < 0 for v in n):
        raise ValueError("negative exponent; pass laurent=True")
    out = {}
    dom = P.algebra.domain
    for e, c in P.flat_terms().items():
        alpha, beta = e[:m], e[m:]
        mult = 1
        for ni, bi in zip(n, beta):
            mult *= _falling(ni, bi)
            if not mult:
                break
        if not mult:
            continue
        idx = tuple(ni - bi + ai for ni, bi, ai in zip(n, beta, alpha))
        v = out.get(idx, dom.zero) + c * mult
        if v:
            out[idx] = v
        else:
            out.pop(idx, None)
    return sorted(out.items())


# Euler-operator expressions -------------------------------------------------


class EulerExpr:
    """Expression tree over ``theta_i``, ``x_i``, constants and parameters."""

    def __add__(self, other):
        return Sum.of((1, self), (1, lift(other)))

    def __radd__(self, other):
        return Sum.of((1, lift(other)), (1, self))

    def __sub__(self, other):
        return Sum.of((1, self), (-1, lift(other)))

    def __rsub__(self, other):
        return Sum.of((1, lift(other)), (-1, self))

    def __neg__(self):
        return Sum.of((-1, self))

    def __mul__(self, other):
        return Prod.of(self, lift(other))

    def __rmul__(self, other):
        return Prod.of(lift(other), self)

    def text(self, xname="x"):
        raise NotImplementedError

    def __str__(self):
        return self.text()


def lift(v):
    if isinstance(v, EulerExpr):
        return v
    if isinstance(v, str):
        return Param(v)
    return Const(v)


class Theta(EulerExpr):
    def __init__(self, i):
        self.i = i

    def text(self, xname="x"):
        return f"t{self.i}"


class XVar(EulerExpr):
    def __init__(self, i):
        self.i = i

    def text(self, xname="x"):
        return f"{xname}{self.i}"


class Const(EulerExpr):
    def __init__(self, value):
        self.value = Fraction(value)

    def text(self, xname="x"):
        return str(self.value)


class Param(EulerExpr):
    def __init__(self, name):
        self.name = name

    def text(self, xname="x"):
        return self.name


class Sum(EulerExpr):
    def __init__(self, terms):
        self.terms = tuple(terms)

    @classmethod
    def of(cls, *signed):
        terms = []
        for sign, e in signed:
            if isinstance(e, Sum):
                terms.extend((sign * s, t) for s, t in e.terms)
            elif isinstance(e, Const) and e.value < 0:
                terms.append((-sign, Const(-e.value)))
            else:
                terms.append((sign, e))
        return cls(terms)

    def text(self, xname="x", top=True):
        plus, minus = (" + ", " - ") if top else ("+", "-")
        out = []
        for k, (sign, e) in enumerate(self.terms):
            body = e.text(xname)
            if k == 0:
                out.append(body if sign > 0 else f"-{body}")
            else:
                out.append((plus if sign > 0 else minus) + body)
        return "".join(out)


class Prod(EulerExpr):
    def __init__(self, factors):
        self.factors = tuple(factors)

    @classmethod
    def of(cls, *factors):
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Prod) else [f])
        return cls(flat)

    def text(self, xname="x"):
        parts = []
        for f in self.factors:
            parts.append(f"({f.text(xname, top=False)})" if isinstance(f, Sum) else f.text(xname))
        return "*".join(parts)


def theta_sum(m):
    """``theta_1 + ... + theta_m``."""
    return Sum.of(*[(1, Theta(i)) for i in range(1, m + 1)])


def euler_expand(expr, algebra):
    """Normal-ordered :class:`WeylOp` equal to the expression.

    Each ``theta_i`` becomes ``x_i d_i`` first; products are then multiplied
    left to right in the Weyl algebra.
    """
    if isinstance(expr, Theta):
        return algebra.theta(expr.i)
    if isinstance(expr, XVar):
        return algebra.x(expr.i)
    if isinstance(expr, Const):
        return algebra.const(expr.value)
    if isinstance(expr, Param):
        return algebra.param(expr.name)
    if isinstance(expr, Sum):
        out = algebra.zero
        for sign, e in expr.terms:
            t = euler_expand(e, algebra)
            out = out + t if sign > 0 else out - t
        return out
    if isinstance(expr, Prod):
        out = algebra.one
        for f in expr.factors:
            out = weyl_mul(out, euler_expand(f, algebra))
        return out
    raise TypeError(f"not an Euler expression: {expr!r}")
