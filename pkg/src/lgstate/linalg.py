"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: Fraction}``.  Internally rows are scaled to
primitive integer vectors and eliminated fraction-free by ``kernels.reduce_int``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import kernels

Vector = Dict[Hashable, Fraction]


def _to_int(vec: Dict, denom_extra: Optional[Dict] = None):
    """Scale a rational vector (and an optional companion) to integers."""
    den = 1
    for v in vec.values():
        den = lcm(den, Fraction(v).denominator)
    if denom_extra:
        for v in denom_extra.values():
            den = lcm(den, Fraction(v).denominator)
    iv = {k: int(Fraction(v) * den) for k, v in vec.items() if v}
    ie = None
    if denom_extra is not None:
        ie = {k: int(Fraction(v) * den) for k, v in denom_extra.items() if v}
    return iv, ie


class Echelon:
    """Incrementally built echelon basis of a subspace, over indexed columns.

    Columns are arbitrary hashables; they are mapped to integers in first-seen
    order, which is the elimination order.
    """

    def __init__(self, track: bool = False):
        self._col: Dict[Hashable, int] = {}
        self._cols: List[Hashable] = []
        self.pivots: Dict[int, Tuple[dict, Optional[dict]]] = {}
        self.track = track

    def _index(self, vec: Dict) -> Dict[int, object]:
        out = {}
        for k, v in vec.items():
            i = self._col.get(k)
            if i is None:
                i = len(self._cols)
                self._col[k] = i
                self._cols.append(k)
            out[i] = v
        return out

    def set_column_order(self, cols: Iterable[Hashable]):
        for c in cols:
            if c not in self._col:
                self._col[c] = len(self._cols)
                self._cols.append(c)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: Dict, combo: Optional[Dict]):
        iv, ic = _to_int(self._index(vec), combo)
        if not self.track:
            ic = None
        return kernels.reduce_int(iv, ic, self.pivots)

    def add(self, vec: Dict, tag: Optional[Hashable] = None) -> Optional[Dict]:
        """Insert ``vec``; return the dependency combo if it was already in the span.

        With ``track=True`` combos are over the tags of previously added vectors
        (coefficients such that sum coeff*vec_tag = 0, including ``tag`` itself).
        """
        combo = {tag: Fraction(1)} if self.track else None
        rv, rc = self._reduce(vec, combo)
        if not rv:
            if not self.track:
                return {}
            return {k: Fraction(v) for k, v in rc.items()}
        piv = min(rv)
        if rv[piv] < 0:
            rv = {k: -v for k, v in rv.items()}
            if rc is not None:
                rc = {k: -v for k, v in rc.items()}
        self.pivots[piv] = (rv, rc)
        return None

    def contains(self, vec: Dict) -> bool:
        rv, _ = self._reduce(vec, None)
        return not rv

    def remainder(self, vec: Dict) -> Vector:
        """Reduced form of vec up to a nonzero scalar (zero iff vec is in the span)."""
        rv, _ = self._reduce(vec, None)
        return {self._cols[k]: Fraction(v) for k, v in rv.items()}

    def express(self, vec: Dict) -> Optional[Dict]:
        """Coefficients writing ``vec`` as a combination of tagged inserts, or None."""
        if not self.track:
            raise ValueError("express requires track=True")
        marker = object()
        combo = {marker: Fraction(1)}
        iv, ic = _to_int(self._index(vec), combo)
        rv, rc = kernels.reduce_int(iv, ic, self.pivots)
        if rv:
            return None
        lead = Fraction(rc.pop(marker))
        return {k: -Fraction(v) / lead for k, v in rc.items() if v}


def rank(vectors: Iterable[Dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(images: Sequence[Dict]) -> List[Dict[int, Fraction]]:
    """Basis of {c : sum_j c_j images[j] = 0}, as dicts over input indices."""
    e = Echelon(track=True)
    out = []
    for j, img in enumerate(images):
        dep = e.add(img, tag=j)
        if dep is not None:
            den = 1
            for v in dep.values():
                den = lcm(den, v.denominator)
            g = 0
            for v in dep.values():
                g = gcd(g, int(v * den))
            out.append({k: v * den / g for k, v in dep.items()})
    return out


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return rank({j: Fraction(v) for j, v in enumerate(r) if v} for r in rows)


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Dense determinant by Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    d = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i]), None)
        if p is None:
            return Fraction(0)
        if p != i:
            a[i], a[p] = a[p], a[i]
            d = -d
        d *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return d


def inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i]), None)
        if p is None:
            raise ValueError("matrix is singular")
        a[i], a[p] = a[p], a[i]
        piv = a[i][i]
        a[i] = [x / piv for x in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [row[n:] for row in a]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    return [[sum((Fraction(a[i][k]) * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def nullspace_dense(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of {v : matrix v = 0} for a dense rational matrix."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    cols = [{i: Fraction(row[j]) for i, row in enumerate(matrix) if row[j]} for j in range(ncols)]
    out = []
    for vec in kernel(cols):
        out.append([vec.get(j, Fraction(0)) for j in range(ncols)])
    return out


def quotient_basis(sub: Sequence[Dict], ambient: Sequence[Dict]) -> List[int]:
    """Indices of ambient vectors extending a basis of span(sub) to span(sub+ambient)."""
    e = Echelon()
    for v in sub:
        e.add(v)
    chosen = []
    for i, v in enumerate(ambient):
        if e.add(v) is None:
            chosen.append(i)
    return chosen
