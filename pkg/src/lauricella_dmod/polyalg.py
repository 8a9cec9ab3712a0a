"""Exact commutative polynomials and polynomial matrices.

Coefficients live either in the rationals or in the field of rational
functions in the hypergeometric parameters ``a, b, c, a1..am, b1..bm,
c1..cm``.  The parameter field is sympy's ``FracField`` over ``ZZ``, whose
elements are kept cancelled, so ``==`` is structural equality.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ, ZZ
from sympy.polys.fields import FracElement, FracField

from . import kernels

BITS = 24
MAX_EXPONENT = (1 << (BITS - 1)) - 1


class RingMismatchError(ValueError):
    """Operands belong to different polynomial rings."""


class NotDivisible(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


def param_names(m):
    """Parameter symbols available in dimension ``m``."""
    return ["a", "b", "c"] + [f"{s}{i}" for s in "abc" for i in range(1, m + 1)]


class RationalDomain:
    """Exact rationals (sympy's ``QQ`` element type, gmpy2 when available)."""

    name = "QQ"

    def __init__(self):
        self.zero = QQ(0)
        self.one = QQ(1)

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "QQ"

    def convert(self, c):
        if isinstance(c, bool):
            raise TypeError("bool is not a coefficient")
        if isinstance(c, int):
            return QQ(c)
        if isinstance(c, Fraction):
            return QQ(c.numerator, c.denominator)
        if isinstance(c, str):
            return self.parse(c)
        if isinstance(c, FracElement):
            if c.numer.is_ground and c.denom.is_ground:
                return QQ(int(c.numer.LC), int(c.denom.LC))
            raise TypeError(f"non-constant coefficient {c} in QQ")
        if hasattr(c, "numerator") and hasattr(c, "denominator"):
            return QQ(int(c.numerator), int(c.denominator))
        raise TypeError(f"cannot convert {c!r} to QQ")

    def is_constant(self, c):
        return True

    def to_fraction(self, c):
        return Fraction(int(c.numerator), int(c.denominator))

    def format(self, c):
        n, d = int(c.numerator), int(c.denominator)
        return str(n) if d == 1 else f"{n}/{d}"

    def parse(self, s):
        return self.convert(Fraction(s.strip()))

    def evaluate(self, c, values):
        return self.to_fraction(c)


class ParamDomain:
    """Rational functions over ``ZZ`` in the parameter symbols of dimension ``m``."""

    def __init__(self, m):
        self.m = m
        self.names = tuple(param_names(m))
        self.field = FracField(",".join(self.names), ZZ)
        self.symbols = self.field.symbols
        self.zero = self.field.zero
        self.one = self.field.one
        self.name = f"params:{m}"
        self._locals = {str(s): s for s in self.symbols}

    def __eq__(self, other):
        return isinstance(other, ParamDomain) and other.m == self.m

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"ParamDomain({self.m})"

    def __reduce__(self):
        return (param_domain, (self.m,))

    def gen(self, name):
        return self.field.from_expr(self._locals[name])

    def convert(self, c):
        if isinstance(c, bool):
            raise TypeError("bool is not a coefficient")
        if isinstance(c, FracElement):
            if c.field == self.field:
                return c
            return self.field.from_expr(c.as_expr())
        if isinstance(c, int):
            return self.field(c)
        if isinstance(c, Fraction):
            return self.field(c.numerator) / c.denominator
        if isinstance(c, str):
            return self.parse(c)
        if hasattr(c, "numerator") and hasattr(c, "denominator"):
            return self.field(int(c.numerator)) / int(c.denominator)
        raise TypeError(f"cannot convert {c!r} to {self.name}")

    def is_constant(self, c):
        return c.numer.is_ground and c.denom.is_ground

    def to_fraction(self, c):
        if not self.is_constant(c):
            raise ValueError(f"{c} is not constant")
        return Fraction(int(c.numer.LC), int(c.denom.LC))

    def format(self, c):
        if self.is_constant(c):
            return RATIONALS.format(self.to_fraction(c))
        if c.denom.is_ground:
            return _poly_str(c.numer, self.names, int(c.denom.LC))
        num = _poly_str(c.numer, self.names)
        den = _poly_str(c.denom, self.names)
        if len(c.numer.terms()) > 1:
            num = f"({num})"
        if len(c.denom.terms()) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def parse(self, s):
        expr = sympy.sympify(s.replace("^", "**"), locals=self._locals)
        return self.field.from_expr(expr)

    def evaluate(self, c, values):
        """Instantiate ``c`` at exact rational ``values`` (name -> Fraction)."""
        vals = [Fraction(values[n]) if n in values else None for n in self.names]
        num = _eval_poly(c.numer, vals, self.names)
        den = _eval_poly(c.denom, vals, self.names)
        if den == 0:
            raise ZeroDivisionError(f"{c} has a pole at the given parameters")
        return num / den


def _poly_str(p, names, denom=1):
    """Parameter polynomial ``p / denom`` as ``3/2*a*b1 - c``."""
    pairs = []
    for monom, coeff in p.terms():
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e)
        pairs.append((mono, QQ(int(coeff), denom)))
    return format_terms(pairs, RATIONALS)


def _eval_poly(p, vals, names):
    total = Fraction(0)
    for monom, coeff in p.terms():
        term = Fraction(int(coeff))
        for v, e, name in zip(vals, monom, names):
            if e:
                if v is None:
                    raise KeyError(f"no value for parameter {name}")
                term *= v**e
        total += term
    return total


RATIONALS = RationalDomain()


@lru_cache(maxsize=None)
def param_domain(m):
    return ParamDomain(m)


def domain_from_name(name):
    if name == "QQ":
        return RATIONALS
    if name.startswith("params:"):
        return param_domain(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown coefficient domain {name!r}")


class PolyRing:
    """Commutative polynomial ring with a fixed, ordered list of variables."""

    def __init__(self, names, domain=RATIONALS):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        self.nvars = len(self.names)
        self.domain = domain
        self._shifts = [BITS * (self.nvars - 1 - i) for i in range(self.nvars)]
        self._mask = (1 << BITS) - 1
        self.guard = sum(1 << (s + BITS - 1) for s in self._shifts)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.domain == other.domain

    def __hash__(self):
        return hash((self.names, self.domain.name))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.domain!r})"

    def pack(self, exps):
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        key = 0
        for e, s in zip(exps, self._shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            key |= e << s
        return key

    def unpack(self, key):
        mask = self._mask
        return tuple((key >> s) & mask for s in self._shifts)

    def index(self, var):
        return var if isinstance(var, int) else self._index[var]

    @property
    def zero(self):
        return CPoly(self, {})

    @property
    def one(self):
        return CPoly(self, {0: self.domain.one})

    def const(self, c):
        c = self.domain.convert(c)
        return CPoly(self, {0: c} if c else {})

    def gen(self, var):
        i = self.index(var)
        return CPoly(self, {1 << self._shifts[i]: self.domain.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1):
        c = self.domain.convert(coeff)
        return CPoly(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms):
        """Build from ``{exponent tuple: coefficient}``."""
        out = {}
        for exps, c in terms.items():
            c = self.domain.convert(c)
            if c:
                k = self.pack(exps)
                out[k] = out[k] + c if k in out else c
        return CPoly(self, {k: c for k, c in out.items() if c})

    def with_domain(self, domain):
        return PolyRing(self.names, domain)

    def to_json(self):
        return {"vars": list(self.names), "domain": self.domain.name}

    @classmethod
    def from_json(cls, data):
        return cls(data["vars"], domain_from_name(data["domain"]))


def xxi_ring(m, domain=RATIONALS, xname="x"):
    """Ring in ``x1..xm, xi1..xim`` (``X1..Xm`` when ``xname='X'``)."""
    names = [f"{xname}{i}" for i in range(1, m + 1)] + [f"xi{i}" for i in range(1, m + 1)]
    return PolyRing(names, domain)


class CPoly:
    """Immutable sparse polynomial; ``ring`` fixes variables and coefficients."""

    __slots__ = ("ring", "_t")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms

    # construction helpers -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    @property
    def terms(self):
        unpack = self.ring.unpack
        return {unpack(k): c for k, c in self._t.items()}

    def sorted_terms(self):
        """``(exponents, coeff)`` pairs in decreasing lexicographic order."""
        unpack = self.ring.unpack
        return [(unpack(k), self._t[k]) for k in sorted(self._t, reverse=True)]

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.ring == other.ring and self._t == other._t
        try:
            other = self.ring.const(other)
        except TypeError:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        return CPoly(self.ring, {k: -c for k, c in self._t.items()})

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
        return CPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            c = self.ring.domain.convert(other)
            if not c:
                return self.ring.zero
            return CPoly(self.ring, {k: v * c for k, v in self._t.items()})
        other = self._coerce(other)
        return CPoly(self.ring, kernels.poly_mul(self._t, other._t))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out, base = self.ring.one, self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, CPoly):
            return exact_divide(self, other)
        c = self.ring.domain.convert(other)
        return CPoly(self.ring, {k: v / c for k, v in self._t.items()})

    # inspection -----------------------------------------------------------

    def is_constant(self):
        return not self._t or set(self._t) == {0}

    def constant_coeff(self):
        return self._t.get(0, self.ring.domain.zero)

    def degree(self, var):
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self, indices=None):
        if indices is None:
            return max((sum(e) for e in self.terms), default=-1)
        return max((sum(e[i] for i in indices) for e in self.terms), default=-1)

    def leading_term(self):
        """Lexicographically largest ``(exponents, coeff)``."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return self.ring.unpack(k), self._t[k]

    def evaluate(self, point):
        """Value at ``point`` (sequence over all variables, or name -> value)."""
        dom = self.ring.domain
        if isinstance(point, dict):
            vals = [dom.convert(point.get(n, 0)) for n in self.ring.names]
        else:
            if len(point) != self.ring.nvars:
                raise ValueError("point has wrong length")
            vals = [dom.convert(v) for v in point]
        total = dom.zero
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def rename(self, mapping, target):
        """Move to ``target`` ring renaming variables by ``mapping`` (old -> new)."""
        idx = []
        for n in self.ring.names:
            new = mapping.get(n, n)
            if new not in target._index:
                raise ValueError(f"variable {new!r} not in target ring")
            idx.append(target._index[new])
        out = {}
        for exps, c in self.terms.items():
            e2 = [0] * target.nvars
            for i, e in zip(idx, exps):
                e2[i] += e
            out[tuple(e2)] = out.get(tuple(e2), target.domain.zero) + target.domain.convert(c)
        return target.from_terms(out)

    def change_domain(self, domain):
        ring = self.ring.with_domain(domain)
        return CPoly(ring, {k: domain.convert(c) for k, c in self._t.items()})

    # output -----------------------------------------------------------------

    def monomial_text(self, exps):
        parts = []
        for name, e in zip(self.ring.names, exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def to_text(self):
        return format_terms(((self.monomial_text(e), c) for e, c in self.sorted_terms()), self.ring.domain)

    __str__ = to_text

    def __repr__(self):
        return f"CPoly({self.to_text()})"

    def to_json(self):
        dom = self.ring.domain
        return {
            "ring": self.ring.to_json(),
            "terms": [{"exp": list(e), "coeff": dom.format(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data):
        ring = PolyRing.from_json(data["ring"])
        return ring.from_terms({tuple(t["exp"]): ring.domain.parse(t["coeff"]) for t in data["terms"]})


def format_terms(pairs, domain):
    """Join ``(monomial text, coeff)`` pairs as ``3/2*a*x1^2 - x2``."""
    out = []
    for mono, c in pairs:
        neg, ctext = _coeff_text(c, domain)
        if ctext and mono:
            body = f"{ctext}*{mono}"
        else:
            body = ctext or mono or "1"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def _coeff_text(c, domain):
    """Return (is_negative, text) with unit coefficients rendered as ''."""
    if domain.is_constant(c):
        q = domain.to_fraction(c)
        neg = q < 0
        q = abs(q)
        return neg, "" if q == 1 else RATIONALS.format(q)
    if c.denom.is_ground and len(c.numer.terms()) == 1:
        lc = c.numer.LC
        if lc < 0:
            return True, domain.format(-c)
        return False, domain.format(c)
    return False, f"({domain.format(c)})"


# operations -----------------------------------------------------------------


def cpoly_arith(p, q, op):
    """Exact ``p op q`` for ``op`` in ``add``, ``sub``, ``mul``."""
    if not isinstance(p, CPoly) or not isinstance(q, CPoly):
        raise TypeError("cpoly_arith expects two CPoly operands")
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring!r} vs {q.ring!r}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def exact_divide(p, d):
    """Return ``q`` with ``p == d*q``; raise :class:`NotDivisible` otherwise."""
    if p.ring != d.ring:
        raise RingMismatchError(f"{p.ring!r} vs {d.ring!r}")
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return p
    quo = kernels.poly_divexact(p._t, d._t, p.ring.guard)
    if quo is None:
        raise NotDivisible(f"({d.to_text()}) does not divide ({p.to_text()})")
    return CPoly(p.ring, quo)


def divides(d, p):
    try:
        exact_divide(p, d)
    except NotDivisible:
        return False
    return True


class PolyMatrix:
    """Rectangular matrix of polynomials from one ring."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have different lengths")
        ring = rows[0][0].ring
        if any(e.ring != ring for r in rows for e in r):
            raise RingMismatchError("entries from different rings")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.ring = ring

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def is_square(self):
        return self.nrows == self.ncols

    def evaluate(self, point):
        return [[e.evaluate(point) for e in r] for r in self.rows]

    def to_text(self):
        return "[" + ", ".join("[" + ", ".join(e.to_text() for e in r) + "]" for r in self.rows) + "]"

    def to_json(self):
        return [[e.to_json()["terms"] for e in r] for r in self.rows]


def det_cofactor(M):
    """Determinant by Laplace expansion along the first row."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    return _laplace(M.rows, M.ring)


def _laplace(rows, ring):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero
    for j, e in enumerate(rows[0]):
        if not e:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = e * _laplace(minor, ring)
        total = total - term if j % 2 else total + term
    return total


def det_bareiss(M):
    """Fraction-free (Bareiss) elimination; every division is exact."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    a = [list(r) for r in M.rows]
    sign = 1
    prev = M.ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return M.ring.zero
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * piv - aik * a[k][j]
                a[i][j] = exact_divide(num, prev)
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_fraction_free(M):
    """Cofactor expansion below size 4, Bareiss elimination from 4 up."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    return det_cofactor(M) if M.nrows < 4 else det_bareiss(M)


def all_epsilons(m):
    return list(itertools.product((0, 1), repeat=m))
