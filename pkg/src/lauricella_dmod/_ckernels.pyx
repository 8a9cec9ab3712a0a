# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free


def poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef list qkeys, qvals
    cdef Py_ssize_t j, nq
    cdef object k1, c1, k, v, prod
    if len(p) > len(q):
        p, q = q, p
    qkeys = list(q.keys())
    qvals = list(q.values())
    nq = len(qkeys)
    for k1, c1 in p.items():
        for j in range(nq):
            k = k1 + qkeys[j]
            prod = c1 * qvals[j]
            v = out.get(k)
            if v is None:
                out[k] = prod
            else:
                out[k] = v + prod
    return {k: v for k, v in out.items() if v}


def poly_divexact(dict p, dict d, object guard):
    import heapq
    cdef object lead = max(d)
    cdef object lc = d[lead]
    cdef list rkeys = [k for k in d if k != lead]
    cdef list rvals = [d[k] for k in rkeys]
    cdef Py_ssize_t j, nr = len(rkeys)
    cdef dict r = dict(p)
    cdef dict quo = {}
    cdef list heap = [-k for k in r]
    cdef object k, c, s, qc, kk, v
    heappop = heapq.heappop
    heappush = heapq.heappush
    heapq.heapify(heap)
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
        for j in range(nr):
            kk = s + rkeys[j]
            v = r.get(kk)
            if v is None:
                r[kk] = -(qc * rvals[j])
                heappush(heap, -kk)
            else:
                v = v - qc * rvals[j]
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return quo


cdef object _coef(int b, int g, int t):
    # C(b, t) * g!/(g-t)!
    cdef object out = 1
    cdef int i
    for i in range(t):
        out = out * (b - i) // (i + 1)
    for i in range(t):
        out = out * (g - i)
    return out


def weyl_mul(dict p, dict q, int m, int bits):
    cdef int n = 2 * m
    cdef object mask = (1 << bits) - 1
    cdef list shifts = [bits * (n - 1 - i) for i in range(n)]
    cdef list pair_unit = [(1 << shifts[i]) + (1 << shifts[m + i]) for i in range(m)]
    cdef list pk = list(p.keys()), pv = list(p.values())
    cdef list qk = list(q.keys()), qv = list(q.values())
    cdef Py_ssize_t np_ = len(pk), nq = len(qk), a, b
    cdef int *beta = <int *> malloc(np_ * m * sizeof(int) + 1)
    cdef int *gamma = <int *> malloc(nq * m * sizeof(int) + 1)
    cdef int *lim = <int *> malloc(m * sizeof(int) + 1)
    cdef int *cur = <int *> malloc(m * sizeof(int) + 1)
    cdef int i, nact, pos
    cdef dict out = {}
    cdef object base, c0, key, mult, v, kk
    cdef list act, coefs
    try:
        for a in range(np_):
            kk = pk[a]
            for i in range(m):
                beta[a * m + i] = <int> ((kk >> shifts[m + i]) & mask)
        for b in range(nq):
            kk = qk[b]
            for i in range(m):
                gamma[b * m + i] = <int> ((kk >> shifts[i]) & mask)
        for a in range(np_):
            for b in range(nq):
                base = pk[a] + qk[b]
                c0 = pv[a] * qv[b]
                act = []
                for i in range(m):
                    if beta[a * m + i] > 0 and gamma[b * m + i] > 0:
                        act.append(i)
                nact = len(act)
                if nact == 0:
                    v = out.get(base)
                    out[base] = c0 if v is None else v + c0
                    continue
                for pos in range(nact):
                    i = act[pos]
                    lim[pos] = min(beta[a * m + i], gamma[b * m + i])
                    cur[pos] = 0
                # odometer over the per-variable contraction counts
                while True:
                    mult = 1
                    key = base
                    for pos in range(nact):
                        if cur[pos]:
                            i = act[pos]
                            mult = mult * _coef(beta[a * m + i], gamma[b * m + i], cur[pos])
                            key = key - cur[pos] * pair_unit[i]
                    v = out.get(key)
                    out[key] = c0 * mult if v is None else v + c0 * mult
                    pos = 0
                    while pos < nact:
                        if cur[pos] < lim[pos]:
                            cur[pos] += 1
                            break
                        cur[pos] = 0
                        pos += 1
                    if pos == nact:
                        break
    finally:
        free(beta)
        free(gamma)
        free(lim)
        free(cur)
    return {k: v for k, v in out.items() if v}
