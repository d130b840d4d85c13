"""Curved algebras, matrix factorizations and their morphism complexes.

Conventions (see ``conventions.py``): a factorization of rank (e, o) has its
e even generators first, then its o odd ones.  The odd operator is the block
matrix ``[[0, d_ev], [d_od, 0]]``; ``d_od`` maps M_ev -> M_od and ``d_ev`` maps
M_od -> M_ev.  Morphisms are matrices acting on column vectors, so a map
M -> N has shape rank(N) x rank(M) and ``compose(g, f)`` is the product G F.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .poly import INHOMOGENEOUS, ZERO_MARKER, Poly, RingSpec, monomials_up_to, rcharge_degree

Matrix = Tuple[Tuple[Poly, ...], ...]


class BraneMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CurvedAlgebra:
    ring: RingSpec
    W: Poly

    def __post_init__(self):
        if self.W.ring != self.ring:
            raise ValueError("W lives in a different ring")
        if self.ring.grading_mode == "Z":
            deg = rcharge_degree(self.W)
            if deg not in (2, ZERO_MARKER):
                raise ValueError(f"W must have R-charge 2, found {deg}")


def _as_matrix(rows, nrows: int, ncols: int, ring: RingSpec) -> Matrix:
    rows = [tuple(ring.parse(e) if isinstance(e, str) else e for e in r) for r in rows]
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError(f"expected a {nrows}x{ncols} matrix")
    return tuple(rows)


def zeros(nrows: int, ncols: int, ring: RingSpec) -> List[List[Poly]]:
    z = ring.zero()
    return [[z] * ncols for _ in range(nrows)]


def mat_mul(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]], ring: RingSpec) -> List[List[Poly]]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m, ring)
    for i in range(n):
        for t in range(k):
            ait = a[i][t]
            if ait.is_zero():
                continue
            bt = b[t]
            row = out[i]
            for j in range(m):
                if not bt[j].is_zero():
                    row[j] = row[j] + ait * bt[j]
    return out


def mat_add(a, b, sign=1):
    return [[x + y if sign > 0 else x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


class MatrixFactorization:
    def __init__(self, algebra: CurvedAlgebra, d_od, d_ev, rank_ev: Optional[int] = None,
                 rank_od: Optional[int] = None, internal_degrees: Optional[Sequence[int]] = None,
                 name: str = ""):
        ring = algebra.ring
        if rank_ev is None:
            rank_ev = len(d_od[0]) if d_od else len(d_ev)
        if rank_od is None:
            rank_od = len(d_od) if d_od else (len(d_ev[0]) if d_ev else 0)
        self.algebra = algebra
        self.rank_ev, self.rank_od = rank_ev, rank_od
        self.d_od = _as_matrix(d_od, rank_od, rank_ev, ring)
        self.d_ev = _as_matrix(d_ev, rank_ev, rank_od, ring)
        self.internal_degrees = tuple(internal_degrees) if internal_degrees is not None else None
        self.name = name

    @property
    def ring(self) -> RingSpec:
        return self.algebra.ring

    @property
    def W(self) -> Poly:
        return self.algebra.W

    @property
    def rank(self) -> int:
        return self.rank_ev + self.rank_od

    @property
    def parities(self) -> Tuple[int, ...]:
        return (0,) * self.rank_ev + (1,) * self.rank_od

    def d_matrix(self) -> List[List[Poly]]:
        """The full odd operator as a rank x rank matrix."""
        e = self.rank_ev
        D = zeros(self.rank, self.rank, self.ring)
        for i in range(e):
            for j in range(self.rank_od):
                D[i][e + j] = self.d_ev[i][j]
        for i in range(self.rank_od):
            for j in range(e):
                D[e + i][j] = self.d_od[i][j]
        return D

    def d_morphism(self) -> "Morphism":
        return Morphism(self, self, 1, self.d_matrix())

    def identity(self) -> "Morphism":
        ring = self.ring
        I = zeros(self.rank, self.rank, ring)
        for i in range(self.rank):
            I[i][i] = ring.one()
        return Morphism(self, self, 0, I)

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization) and self.algebra == other.algebra
                and self.d_od == other.d_od and self.d_ev == other.d_ev
                and (self.rank_ev, self.rank_od) == (other.rank_ev, other.rank_od))

    def __hash__(self):
        return hash((self.algebra, self.d_od, self.d_ev, self.rank_ev, self.rank_od))

    def __repr__(self):
        label = self.name or "MF"
        return f"<{label} rank ({self.rank_ev},{self.rank_od}) over W = {self.W}>"


@dataclass
class Report:
    """Validation outcome; ``failures`` carry human-readable witnesses."""

    ok: bool = True
    failures: List[dict] = field(default_factory=list)

    def fail(self, **witness):
        self.ok = False
        self.failures.append(witness)

    def __bool__(self):
        return self.ok


def validate_mf(M: MatrixFactorization) -> Report:
    rep = Report()
    ring, W = M.ring, M.W
    ev_od = mat_mul(M.d_ev, M.d_od, ring) if M.rank_od else zeros(M.rank_ev, M.rank_ev, ring)
    od_ev = mat_mul(M.d_od, M.d_ev, ring) if M.rank_ev else zeros(M.rank_od, M.rank_od, ring)
    for label, prod, n in (("d_ev*d_od", ev_od, M.rank_ev), ("d_od*d_ev", od_ev, M.rank_od)):
        for i in range(n):
            for j in range(n):
                want = W if i == j else ring.zero()
                if prod[i][j] != want:
                    rep.fail(check=label, entry=(i, j), found=str(prod[i][j]), expected=str(want))
    if ring.grading_mode == "Z" and M.internal_degrees is not None:
        q = M.internal_degrees
        if len(q) != M.rank:
            rep.fail(check="internal_degrees", found=len(q), expected=M.rank)
            return rep
        for i, (qi, p) in enumerate(zip(q, M.parities)):
            if qi % 2 != p:
                rep.fail(check="internal_degree_parity", generator=i, found=qi)
        D = M.d_matrix()
        for i in range(M.rank):
            for j in range(M.rank):
                if D[i][j].is_zero():
                    continue
                deg = rcharge_degree(D[i][j])
                want = q[j] + 1 - q[i]
                if deg == INHOMOGENEOUS or deg != want:
                    rep.fail(check="homogeneity", entry=(i, j), found=str(deg), expected=want)
    return rep


class Morphism:
    """A parity-homogeneous map between factorizations, stored as a full matrix."""

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization, parity: int, matrix):
        self.source, self.target, self.parity = source, target, parity % 2
        ring = source.ring
        m = _as_matrix(matrix, target.rank, source.rank, ring)
        ps, pt = source.parities, target.parities
        for i in range(target.rank):
            for j in range(source.rank):
                if not m[i][j].is_zero() and (pt[i] + ps[j]) % 2 != self.parity:
                    raise ValueError(f"entry ({i},{j}) violates parity {self.parity}")
        self.matrix = m

    @classmethod
    def from_blocks(cls, source, target, parity, blocks: Dict[str, Sequence]) -> "Morphism":
        """Blocks keyed 'ev_ev', 'od_od' (even) or 'ev_od', 'od_ev' (odd) as 'src_tgt'."""
        ring = source.ring
        m = zeros(target.rank, source.rank, ring)
        off = {"ev": (0, 0), "od": (source.rank_ev, target.rank_ev)}
        for name, block in blocks.items():
            s, t = name.split("_")
            c0 = off[s][0]
            r0 = off[t][1]
            for i, row in enumerate(block):
                for j, e in enumerate(row):
                    m[r0 + i][c0 + j] = ring.parse(e) if isinstance(e, str) else e
        return cls(source, target, parity, m)

    def blocks(self) -> Dict[str, List[List[Poly]]]:
        s, t = self.source, self.target
        rs = {"ev": range(0, s.rank_ev), "od": range(s.rank_ev, s.rank)}
        rt = {"ev": range(0, t.rank_ev), "od": range(t.rank_ev, t.rank)}
        names = ("ev_ev", "od_od") if self.parity == 0 else ("ev_od", "od_ev")
        out = {}
        for name in names:
            a, b = name.split("_")
            out[name] = [[self.matrix[i][j] for j in rs[a]] for i in rt[b]]
        return out

    @property
    def ring(self):
        return self.source.ring

    def is_zero(self):
        return all(e.is_zero() for r in self.matrix for e in r)

    def __add__(self, other: "Morphism"):
        self._same(other)
        return Morphism(self.source, self.target, self.parity, mat_add(self.matrix, other.matrix))

    def __sub__(self, other: "Morphism"):
        self._same(other)
        return Morphism(self.source, self.target, self.parity, mat_add(self.matrix, other.matrix, -1))

    def scale(self, c) -> "Morphism":
        if isinstance(c, Poly):
            return Morphism(self.source, self.target, self.parity, [[e * c for e in r] for r in self.matrix])
        return Morphism(self.source, self.target, self.parity, [[e.scale(c) for e in r] for r in self.matrix])

    def __neg__(self):
        return self.scale(-1)

    def _same(self, other):
        if (self.source, self.target, self.parity) != (other.source, other.target, other.parity):
            raise BraneMismatch("morphisms have different source, target or parity")

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.parity == other.parity and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.parity, self.matrix))

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in r) for r in self.matrix)
        return f"Morphism(parity={self.parity}, [{rows}])"


def hom_diff(f: Morphism) -> Morphism:
    """d(f) = d_N f - (-1)^|f| f d_M."""
    ring = f.ring
    a = mat_mul(f.target.d_matrix(), f.matrix, ring)
    b = mat_mul(f.matrix, f.source.d_matrix(), ring)
    m = mat_add(a, b, -1 if f.parity == 0 else 1)
    return Morphism(f.source, f.target, 1 - f.parity, m)


def compose(g: Morphism, f: Morphism) -> Morphism:
    if f.target != g.source:
        raise BraneMismatch("target of f is not the source of g")
    return Morphism(f.source, g.target, f.parity + g.parity, mat_mul(g.matrix, f.matrix, f.ring))


def tensor_mf(M: MatrixFactorization, N: MatrixFactorization) -> MatrixFactorization:
    """d(e_a (x) f_b) = d_M(e_a) (x) f_b + (-1)^|a| e_a (x) d_N(f_b)."""
    if M.ring != N.ring:
        raise ValueError("factorizations live in different rings")
    ring = M.ring
    DM, DN = M.d_matrix(), N.d_matrix()
    pm, pn = M.parities, N.parities
    gens = [(a, b) for a in range(M.rank) for b in range(N.rank)]
    ev = [g for g in gens if (pm[g[0]] + pn[g[1]]) % 2 == 0]
    od = [g for g in gens if (pm[g[0]] + pn[g[1]]) % 2 == 1]
    order = ev + od

    def entry(tgt, src):
        (a2, b2), (a, b) = tgt, src
        v = ring.zero()
        if b2 == b:
            v = v + DM[a2][a]
        if a2 == a:
            v = v + (DN[b2][b] if pm[a] == 0 else -DN[b2][b])
        return v

    d_od = [[entry(t, s) for s in ev] for t in od]
    d_ev = [[entry(t, s) for s in od] for t in ev]
    degrees = None
    if M.internal_degrees is not None and N.internal_degrees is not None:
        degrees = [M.internal_degrees[a] + N.internal_degrees[b] for a, b in order]
    alg = CurvedAlgebra(ring, M.W + N.W)
    return MatrixFactorization(alg, d_od, d_ev, rank_ev=len(ev), rank_od=len(od), internal_degrees=degrees,
                               name=f"{M.name or 'M'}*{N.name or 'N'}")


# -- Ext in a degree window -----------------------------------------------------

def morphism_space_basis(M: MatrixFactorization, N: MatrixFactorization, parity: int, D: int):
    """(i, j, monomial) coordinates of maps M -> N of given parity, entries of degree <= D."""
    n = M.ring.n
    mons = monomials_up_to(n, D)
    pm, pn = M.parities, N.parities
    slots = [(i, j) for i in range(N.rank) for j in range(M.rank) if (pn[i] + pm[j]) % 2 == parity % 2]
    return [(i, j, m) for m in mons for (i, j) in slots]


def morphism_from_coords(M, N, parity, coords: Dict) -> Morphism:
    ring = M.ring
    mat = zeros(N.rank, M.rank, ring)
    acc: Dict[Tuple[int, int], dict] = {}
    for (i, j, m), c in coords.items():
        acc.setdefault((i, j), {})[m] = c
    for (i, j), terms in acc.items():
        mat[i][j] = Poly(ring, terms)
    return Morphism(M, N, parity, mat)


def morphism_coords(f: Morphism) -> Dict:
    out = {}
    for i, row in enumerate(f.matrix):
        for j, e in enumerate(row):
            for m, c in e.items():
                out[(i, j, m)] = c
    return out


def ext_basis(M: MatrixFactorization, N: MatrixFactorization, parity: int, degree_bound: int) -> List[Morphism]:
    """Representatives of closed modulo exact maps M -> N inside the degree window."""
    if M.rank == 0 or N.rank == 0:
        return []
    ring = M.ring
    D = degree_bound
    basis = morphism_space_basis(M, N, parity, D)

    def image(coord, par):
        i, j, m = coord
        mat = zeros(N.rank, M.rank, ring)
        mat[i][j] = ring.monomial(m)
        return morphism_coords(hom_diff(Morphism(M, N, par, mat)))

    cycles = linalg.kernel([image(c, parity) for c in basis])
    cycle_vecs = [{basis[k]: v for k, v in z.items()} for z in cycles]

    pre = morphism_space_basis(M, N, 1 - parity, D)
    pre_imgs = [image(c, 1 - parity) for c in pre]
    high = [{k: v for k, v in img.items() if sum(k[2]) > D} for img in pre_imgs]
    boundaries = []
    for combo in linalg.kernel(high):
        vec: Dict = {}
        for k, c in combo.items():
            for key, v in pre_imgs[k].items():
                vec[key] = vec.get(key, 0) + c * v
        boundaries.append({k: v for k, v in vec.items() if v})
    chosen = linalg.quotient_basis(boundaries, cycle_vecs)
    return [morphism_from_coords(M, N, parity, cycle_vecs[i]) for i in chosen]
