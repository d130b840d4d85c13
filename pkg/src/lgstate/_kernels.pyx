# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same algorithms with typed loop state."""
from heapq import heapify, heappop, heappush
from fractions import Fraction
from math import gcd


def poly_add(dict a, dict b, int sign):
    cdef dict out = dict(a)
    cdef object m, c, v
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign > 0 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


cdef tuple _clear(dict a):
    cdef object d = 1
    cdef object c, q
    for c in a.values():
        q = c.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    return d, {m: c.numerator * (d // c.denominator) for m, c in a.items()}


def poly_mul(dict a, dict b):
    cdef dict acc = {}
    cdef dict ia, ib
    cdef tuple m1, m2, m
    cdef object c1, c2, da, db, d
    cdef Py_ssize_t i, n
    cdef list buf
    if len(a) < len(b):
        a, b = b, a
    da, ia = _clear(a)
    db, ib = _clear(b)
    for m1, c1 in ib.items():
        n = len(m1)
        buf = [0] * n
        for m2, c2 in ia.items():
            for i in range(n):
                buf[i] = <long>m1[i] + <long>m2[i]
            m = tuple(buf)
            acc[m] = acc.get(m, 0) + c1 * c2
    d = da * db
    return {m: Fraction(v, d) for m, v in acc.items() if v}


cdef object _content(dict vec, object combo):
    cdef object g = 0
    cdef object v
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    if combo is not None:
        for v in (<dict>combo).values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def reduce_int(dict vec, object combo, dict pivots):
    cdef list heap = list(vec)
    cdef object c, a, p, g, k, v, nv, piv
    cdef dict row
    cdef object rcombo
    heapify(heap)
    while heap:
        c = heappop(heap)
        a = vec.get(c)
        if not a:
            continue
        piv = pivots.get(c)
        if piv is None:
            continue
        row, rcombo = piv
        p = row[c]
        g = gcd(p, a)
        p //= g
        a //= g
        if p != 1:
            for k in vec:
                vec[k] *= p
            if combo is not None:
                for k in combo:
                    combo[k] *= p
        for k, v in row.items():
            if k in vec:
                nv = vec[k] - a * v
                if nv:
                    vec[k] = nv
                else:
                    del vec[k]
            else:
                vec[k] = -a * v
                heappush(heap, k)
        if combo is not None and rcombo is not None:
            for k, v in (<dict>rcombo).items():
                nv = combo.get(k, 0) - a * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
    g = _content(vec, combo)
    if g > 1:
        for k in vec:
            vec[k] //= g
        if combo is not None:
            for k in combo:
                combo[k] //= g
    return vec, combo
