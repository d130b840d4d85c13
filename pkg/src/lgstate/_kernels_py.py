"""Pure-Python hot kernels.  ``_kernels.pyx`` mirrors this file line for line."""
from heapq import heapify, heappop, heappush
from fractions import Fraction
from math import gcd


def poly_add(a, b, sign):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign > 0 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _clear(a):
    """(common denominator, integer numerators) of a Fraction-valued dict."""
    d = 1
    for c in a.values():
        q = c.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    return d, {m: c.numerator * (d // c.denominator) for m, c in a.items()}


def poly_mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    da, ia = _clear(a)
    db, ib = _clear(b)
    acc = {}
    for m1, c1 in ib.items():
        for m2, c2 in ia.items():
            m = tuple([x + y for x, y in zip(m1, m2)])
            acc[m] = acc.get(m, 0) + c1 * c2
    d = da * db
    return {m: Fraction(v, d) for m, v in acc.items() if v}


def _content(vec, combo):
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    if combo is not None:
        for v in combo.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def reduce_int(vec, combo, pivots):
    """Reduce an integer sparse vector against integer pivot rows in place.

    ``pivots`` maps a pivot column to ``(row, row_combo)`` where the pivot is
    the smallest column of ``row``.  Each elimination step scales ``vec`` by
    the pivot entry, so the result is only defined up to a positive multiple;
    it is divided by its content before returning.
    """
    heap = list(vec)
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
            for k, v in rcombo.items():
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
