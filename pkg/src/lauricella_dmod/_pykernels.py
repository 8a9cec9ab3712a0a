"""Pure-Python reference kernels.

Polynomials are dicts mapping a packed exponent key to a nonzero coefficient.
A key stores one exponent per fixed-width bit field, the first variable in the
most significant field, so integer comparison of keys is lexicographic order
and adding keys multiplies monomials.  Coefficients only need ``+ - * /``.
"""

from heapq import heapify, heappop, heappush
from itertools import product


def poly_mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    qitems = list(q.items())
    for k1, c1 in p.items():
        for k2, c2 in qitems:
            k = k1 + k2
            v = get(k)
            out[k] = c1 * c2 if v is None else v + c1 * c2
    return {k: c for k, c in out.items() if c}


def poly_divexact(p, d, guard):
    """Return ``q`` with ``p == q*d`` or ``None`` if ``d`` does not divide ``p``.

    ``guard`` has the top bit of every field set; it implements the
    field-wise divisibility test on packed keys.
    """
    lead = max(d)
    lc = d[lead]
    rest = [(k, c) for k, c in d.items() if k != lead]
    r = dict(p)
    heap = [-k for k in r]
    heapify(heap)
    quo = {}
    while heap:
        k = -heappop(heap)
        c = r.pop(k, None)
        if c is None:
            continue
        if ((k | guard) - lead) & guard != guard:
            return None
        s = k - lead
        qc = c / lc
        quo[s] = qc
        for kd, cd in rest:
            kk = s + kd
            v = r.get(kk)
            if v is None:
                r[kk] = -qc * cd
                heappush(heap, -kk)
            else:
                v = v - qc * cd
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return quo


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _binom(n, k):
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def weyl_mul(p, q, m, bits):
    """Normal-ordered product in the Weyl algebra on ``m`` variables.

    Keys hold ``(alpha_1..alpha_m, beta_1..beta_m)`` for ``x^alpha d^beta``.
    Uses ``d^b x^a = sum_k C(b,k) a!/(a-k)! x^(a-k) d^(b-k)`` per variable.
    """
    mask = (1 << bits) - 1
    n = 2 * m
    shifts = [bits * (n - 1 - i) for i in range(n)]
    # lowering x_i and d_i together by one
    pair_unit = [(1 << shifts[i]) + (1 << shifts[m + i]) for i in range(m)]

    def unpack(k):
        return [(k >> s) & mask for s in shifts]

    pu = [(k, unpack(k)[m:], c) for k, c in p.items()]
    qu = [(k, unpack(k)[:m], c) for k, c in q.items()]
    out = {}
    get = out.get
    for kp, beta, cp in pu:
        for kq, gamma, cq in qu:
            base = kp + kq
            c0 = cp * cq
            active = [i for i in range(m) if beta[i] and gamma[i]]
            if not active:
                v = get(base)
                out[base] = c0 if v is None else v + c0
                continue
            tables = []
            for i in active:
                b, g = beta[i], gamma[i]
                tables.append(
                    [(t, _binom(b, t) * _falling(g, t), t * pair_unit[i]) for t in range(min(b, g) + 1)]
                )
            for choice in product(*tables):
                mult = 1
                key = base
                for _, coef, drop in choice:
                    mult *= coef
                    key -= drop
                v = get(key)
                out[key] = c0 * mult if v is None else v + c0 * mult
    return {k: c for k, c in out.items() if c}
