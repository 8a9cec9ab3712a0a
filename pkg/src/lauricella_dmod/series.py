"""Truncated Lauricella series with exact rational coefficients.

``F_A``:  (a)_{|n|} prod (b_i)_{n_i} / prod (c_i)_{n_i} n_i!
``F_B``:  prod (a_i)_{n_i} (b_i)_{n_i} / (c)_{|n|} prod n_i!
``F_C``:  (a)_{|n|} (b)_{|n|} / prod (c_i)_{n_i} n_i!
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .families import FamilySpec, operator_family

SERIES_FAMILIES = ("A", "B", "C")


def pochhammer(q, n):
    """Rising factorial ``q (q+1) ... (q+n-1)``; ``(q)_0 = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = Fraction(q)
    out = Fraction(1)
    for k in range(n):
        out *= q + k
    return out


def _denominator_names(family, m):
    if family == "B":
        return ["c"]
    return [f"c{i}" for i in range(1, m + 1)]


@dataclass
class ParamValues:
    family: str
    m: int
    values: dict

    def __post_init__(self):
        if self.family not in SERIES_FAMILIES:
            raise ValueError(f"family must be one of {SERIES_FAMILIES}")
        names = FamilySpec(self.family, self.m).parameter_names
        missing = [n for n in names if n not in self.values]
        if missing:
            raise ValueError(f"missing parameter values: {missing}")
        self.values = {n: Fraction(v) for n, v in self.values.items()}
        for n in _denominator_names(self.family, self.m):
            v = self.values[n]
            if v.denominator == 1 and v <= 0:
                raise ValueError(f"{n} = {v} is a nonpositive integer")

    def to_json(self):
        return {n: str(v) for n, v in sorted(self.values.items())}


def random_param_values(family, m, rng, max_abs=20):
    """Random rationals ``+-p/q`` with ``p, q`` in ``[1, max_abs]``; re-draws forbidden values."""
    names = FamilySpec(family, m).parameter_names
    while True:
        vals = {
            n: Fraction(rng.choice((-1, 1)) * rng.randint(1, max_abs), rng.randint(1, max_abs)) for n in names
        }
        try:
            return ParamValues(family, m, vals)
        except ValueError:
            continue


def indices_upto(m, N):
    """All multi-indices of length ``m`` with total degree ``<= N``."""
    for tot in range(N + 1):
        for c in itertools.combinations(range(tot + m - 1), m - 1):
            bars = (-1,) + c + (tot + m - 1,)
            yield tuple(bars[k + 1] - bars[k] - 1 for k in range(m))


@dataclass
class TruncSeries:
    m: int
    N: int
    coeffs: dict
    residue: dict = field(default_factory=dict)

    def __getitem__(self, n):
        return self.coeffs.get(tuple(n), Fraction(0))

    def nonzero_indices(self):
        return sorted(n for n, c in self.coeffs.items() if c)

    def copy(self):
        return TruncSeries(self.m, self.N, dict(self.coeffs), dict(self.residue))


def series_coefficient(family, m, pv, n):
    v = pv.values
    tot = sum(n)
    den = prod_frac(factorial(k) for k in n)
    if family == "A":
        num = pochhammer(v["a"], tot) * prod_frac(pochhammer(v[f"b{i + 1}"], k) for i, k in enumerate(n))
        den *= prod_frac(pochhammer(v[f"c{i + 1}"], k) for i, k in enumerate(n))
    elif family == "B":
        num = prod_frac(
            pochhammer(v[f"a{i + 1}"], k) * pochhammer(v[f"b{i + 1}"], k) for i, k in enumerate(n)
        )
        den *= pochhammer(v["c"], tot)
    else:
        num = pochhammer(v["a"], tot) * pochhammer(v["b"], tot)
        den *= prod_frac(pochhammer(v[f"c{i + 1}"], k) for i, k in enumerate(n))
    return num / den


def prod_frac(it):
    out = Fraction(1)
    for v in it:
        out *= v
    return out


def build_series(family, m, pv, N):
    """Coefficients of the family's series through total degree ``N``."""
    if pv.family != family or pv.m != m:
        raise ValueError("parameter values belong to a different family or dimension")
    return TruncSeries(m, N, {n: series_coefficient(family, m, pv, n) for n in indices_upto(m, N)})


def instantiate(P, values):
    """``{(alpha, beta): Fraction}`` with the parameters replaced by ``values``."""
    dom = P.algebra.domain
    out = {}
    for e, c in P.terms.items():
        try:
            out[e] = dom.evaluate(c, values)
        except KeyError as exc:
            raise ValueError(f"operator uses a parameter without a value: {exc}") from None
    return out


def apply_operator(P, s, pv):
    """``P . s`` truncated at degree ``s.N``; higher terms go to ``residue``.

    Output through degree ``N + min(|alpha| - |beta|)`` uses only stored
    coefficients, so for the family operators it is exact through ``N``.
    """
    if P.algebra.m != s.m:
        raise ValueError("operator and series differ in dimension")
    values = pv.values if isinstance(pv, ParamValues) else pv
    terms = instantiate(P, values)
    out, residue = {}, {}
    for n, cn in s.coeffs.items():
        if not cn:
            continue
        for (alpha, beta), c in terms.items():
            mult = 1
            for ni, bi in zip(n, beta):
                for t in range(bi):
                    mult *= ni - t
            if not mult:
                continue
            idx = tuple(ni - bi + ai for ni, bi, ai in zip(n, beta, alpha))
            target = out if sum(idx) <= s.N else residue
            target[idx] = target.get(idx, Fraction(0)) + c * mult * cn
    return TruncSeries(
        s.m,
        s.N,
        {k: v for k, v in out.items() if v},
        {k: v for k, v in residue.items() if v},
    )


def recurrence_oracle(family, m, pv, N, series=None):
    """Check the two-term coefficient recurrence of the family on ``series``.

    A:  (n_i+1)(n_i+c_i) F(n+e_i) = (|n|+a)(n_i+b_i) F(n)
    B:  (n_i+1)(|n|+c) F(n+e_i) = (n_i+a_i)(n_i+b_i) F(n)
    C:  (n_i+1)(n_i+c_i) F(n+e_i) = (|n|+a)(|n|+b) F(n)
    for every ``i`` and every ``n`` with ``|n| < N``, plus ``F(0) = 1``.
    """
    if series is None:
        series = build_series(family, m, pv, N)
    v = pv.values
    if series[(0,) * m] != 1:
        return False
    for tot in range(N):
        for n in indices_upto_exact(m, tot):
            for i in range(m):
                up = list(n)
                up[i] += 1
                ni = n[i]
                if family == "A":
                    lhs = (ni + 1) * (ni + v[f"c{i + 1}"])
                    rhs = (tot + v["a"]) * (ni + v[f"b{i + 1}"])
                elif family == "B":
                    lhs = (ni + 1) * (tot + v["c"])
                    rhs = (ni + v[f"a{i + 1}"]) * (ni + v[f"b{i + 1}"])
                else:
                    lhs = (ni + 1) * (ni + v[f"c{i + 1}"])
                    rhs = (tot + v["a"]) * (tot + v["b"])
                if lhs * series[tuple(up)] != rhs * series[n]:
                    return False
    return True


def indices_upto_exact(m, tot):
    for c in itertools.combinations(range(tot + m - 1), m - 1):
        bars = (-1,) + c + (tot + m - 1,)
        yield tuple(bars[k + 1] - bars[k] - 1 for k in range(m))


@dataclass
class TrialResult:
    params: ParamValues
    operator_ok: list
    residue_degrees: list
    oracle_ok: bool
    corrupted_index: tuple | None = None
    corruption_caught_by_operators: bool | None = None
    corruption_caught_by_oracle: bool | None = None

    @property
    def passed(self):
        ok = all(self.operator_ok) and self.oracle_ok
        if self.corrupted_index is not None:
            ok = ok and self.corruption_caught_by_operators and self.corruption_caught_by_oracle
        return ok

    def to_json(self):
        out = {
            "params": self.params.to_json(),
            "operators": ["PASS" if ok else "FAIL" for ok in self.operator_ok],
            "residue_degrees": self.residue_degrees,
            "oracle": "PASS" if self.oracle_ok else "FAIL",
        }
        if self.corrupted_index is not None:
            out["corrupted_index"] = list(self.corrupted_index)
            out["corruption_caught_by_operators"] = self.corruption_caught_by_operators
            out["corruption_caught_by_oracle"] = self.corruption_caught_by_oracle
        return out


def operators_annihilate(ops, s, pv):
    """Per operator: whether every output coefficient through degree N vanishes."""
    return [not apply_operator(P, s, pv).coeffs for P in ops]


def verify_annihilation(family, m, N=8, trials=5, seed=0, corrupt=True):
    """Random-parameter annihilation and recurrence checks; optional corruption test."""
    if family not in SERIES_FAMILIES:
        raise ValueError(f"family must be one of {SERIES_FAMILIES}")
    rng = random.Random(seed)
    ops = operator_family(FamilySpec(family, m))
    results = []
    for _ in range(trials):
        pv = random_param_values(family, m, rng)
        s = build_series(family, m, pv, N)
        applied = [apply_operator(P, s, pv) for P in ops]
        res = TrialResult(
            pv,
            [not a.coeffs for a in applied],
            sorted({sum(k) for a in applied for k in a.residue}),
            recurrence_oracle(family, m, pv, N, s),
        )
        if corrupt:
            idx = rng.choice(list(s.coeffs))
            bad = s.copy()
            bad.coeffs[idx] = bad.coeffs[idx] + 1
            res.corrupted_index = idx
            res.corruption_caught_by_operators = not all(operators_annihilate(ops, bad, pv))
            res.corruption_caught_by_oracle = not recurrence_oracle(family, m, pv, N, bad)
        results.append(res)
    return results
