"""Truncated Hochschild complexes of (R, W) and of its category of factorizations.

A chain of C_H(R, W) is a rational combination of words (r_0, ..., r_k) of
monomials; words with more than ``L + 1`` factors are dropped.  Chains of the
factorization category are combinations of words of elementary morphisms
(one monomial entry each), which keeps both sides canonical.

Sign conventions are documented in ``conventions.py``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .factorizations import (CurvedAlgebra, MatrixFactorization, Morphism, hom_diff, mat_mul, zeros)
from .groebner import NonIsolatedSingularity, jacobian_basis, milnor_number, quotient_basis, NotZeroDimensional
from .poly import Form, Monomial, Poly, RingSpec, exterior_d, monomials_up_to, wedge_all

Word = Tuple[Monomial, ...]

# Relative sign of the curvature term: hochschild_diff = boundary + CURVATURE_SIGN * w_insertion.
CURVATURE_SIGN = -1


def _madd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class TensorChain:
    """Element of the length-truncated Hochschild complex C_H(R, W)."""

    __slots__ = ("algebra", "L", "terms")

    def __init__(self, algebra: CurvedAlgebra, terms: Dict[Word, Fraction] = None, L: int = 4):
        self.algebra = algebra
        self.L = L
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c and len(w) <= L + 1}

    @classmethod
    def from_words(cls, algebra: CurvedAlgebra, words: Iterable, L: int = 4) -> "TensorChain":
        """Build from ``(coeff, [Poly, ...])`` pairs, expanding multilinearly."""
        acc: Dict[Word, Fraction] = {}
        for coeff, factors in words:
            _expand_into(acc, Fraction(coeff), factors)
        return cls(algebra, acc, L)

    @property
    def ring(self) -> RingSpec:
        return self.algebra.ring

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorChain") -> "TensorChain":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return TensorChain(self.algebra, out, min(self.L, other.L))

    def __neg__(self):
        return TensorChain(self.algebra, {w: -c for w, c in self.terms.items()}, self.L)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorChain":
        return TensorChain(self.algebra, {w: v * c for w, v in self.terms.items()}, self.L)

    def restrict(self, max_factors: int) -> "TensorChain":
        return TensorChain(self.algebra, {w: c for w, c in self.terms.items() if len(w) <= max_factors}, self.L)

    def length_component(self, k: int) -> "TensorChain":
        return TensorChain(self.algebra, {w: c for w, c in self.terms.items() if len(w) == k + 1}, self.L)

    def __eq__(self, other):
        return isinstance(other, TensorChain) and self.algebra == other.algebra and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "TensorChain(0)"
        ring = self.ring
        parts = []
        for w, c in sorted(self.terms.items()):
            parts.append(f"{c}*(" + " | ".join(str(ring.monomial(m)) for m in w) + ")")
        return "TensorChain(" + " + ".join(parts) + ")"


def _expand_into(acc: dict, coeff: Fraction, factors: Sequence[Poly]):
    items = [list(f.items()) for f in factors]
    if any(not it for it in items):
        return
    for combo in product(*items):
        c = coeff
        for _, v in combo:
            c *= v
        w = tuple(m for m, _ in combo)
        nv = acc.get(w, 0) + c
        if nv:
            acc[w] = nv
        else:
            acc.pop(w, None)


def _add(acc: dict, w, c):
    nv = acc.get(w, 0) + c
    if nv:
        acc[w] = nv
    else:
        acc.pop(w, None)


def boundary(c: TensorChain) -> TensorChain:
    """Classical Hochschild boundary b, including the cyclic term (-1)^k r_k r_0."""
    out: Dict[Word, Fraction] = {}
    for w, coeff in c.terms.items():
        k = len(w) - 1
        for i in range(k):
            nw = w[:i] + (_madd(w[i], w[i + 1]),) + w[i + 2:]
            _add(out, nw, coeff if i % 2 == 0 else -coeff)
        if k >= 1:
            nw = (_madd(w[k], w[0]),) + w[1:k]
            _add(out, nw, coeff if k % 2 == 0 else -coeff)
    return TensorChain(c.algebra, out, c.L)


def w_insertion(c: TensorChain, W: Optional[Poly] = None) -> TensorChain:
    """sum_{i=0}^{k} (-1)^i r_0 (x) .. (x) r_i (x) W (x) r_{i+1} (x) .. (x) r_k."""
    W = c.algebra.W if W is None else W
    out: Dict[Word, Fraction] = {}
    wt = list(W.items())
    for w, coeff in c.terms.items():
        if len(w) + 1 > c.L + 1:
            continue
        for i in range(len(w)):
            s = coeff if i % 2 == 0 else -coeff
            for m, v in wt:
                _add(out, w[:i + 1] + (m,) + w[i + 1:], s * v)
    return TensorChain(c.algebra, out, c.L)


def hochschild_diff(c: TensorChain) -> TensorChain:
    return boundary(c) + w_insertion(c).scale(CURVATURE_SIGN)


# -- HKR ------------------------------------------------------------------------

def hkr(c: TensorChain) -> Form:
    """phi(r_0 (x) .. (x) r_k) = (1/k!) r_0 dr_1 ^ .. ^ dr_k."""
    ring = c.ring
    total = Form(ring)
    cache: Dict[Monomial, Form] = {}
    for w, coeff in c.terms.items():
        k = len(w) - 1
        forms = []
        for m in w[1:]:
            f = cache.get(m)
            if f is None:
                f = cache[m] = exterior_d(ring.monomial(m))
            forms.append(f)
        wf = wedge_all(forms, ring)
        if wf.is_zero():
            continue
        total = total + wf.scale(ring.monomial(w[0], coeff / factorial(k)))
    return total


# -- the category side --------------------------------------------------------

# An elementary morphism: (source index, target index, row, column, monomial).
Elem = Tuple[int, int, int, int, Monomial]


class CatChain:
    """Element of C_H of the factorization category on a fixed list of branes.

    A word (a_0, ..., a_k) is composable when the matrix product a_0 a_1 .. a_k
    is defined and is an endomorphism: source(a_i) = target(a_{i+1}) and
    source(a_k) = target(a_0).
    """

    def __init__(self, branes: Sequence[MatrixFactorization], terms: Dict[Tuple[Elem, ...], Fraction] = None):
        self.branes = tuple(branes)
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    def index_of(self, M: MatrixFactorization) -> int:
        for i, b in enumerate(self.branes):
            if b is M:
                return i
        for i, b in enumerate(self.branes):
            if b == M:
                return i
        raise ValueError("morphism refers to a brane outside this chain's brane list")

    @classmethod
    def from_morphisms(cls, branes, words: Iterable) -> "CatChain":
        """Build from ``(coeff, [Morphism, ...])`` pairs."""
        c = cls(branes)
        acc: Dict = {}
        for coeff, morphs in words:
            morphs = list(morphs)
            for a, b in zip(morphs, morphs[1:] + morphs[:1]):
                if a.source != b.target:
                    raise ValueError("non-composable cycle")
            parts = [c._elements(f) for f in morphs]
            for combo in product(*parts):
                v = Fraction(coeff)
                for _, x in combo:
                    v *= x
                _add(acc, tuple(e for e, _ in combo), v)
        c.terms = acc
        return c

    def _elements(self, f: Morphism):
        s, t = self.index_of(f.source), self.index_of(f.target)
        out = []
        for i, row in enumerate(f.matrix):
            for j, e in enumerate(row):
                for m, v in e.items():
                    out.append(((s, t, i, j, m), v))
        return out

    def elem_morphism(self, e: Elem) -> Morphism:
        s, t, i, j, m = e
        M, N = self.branes[s], self.branes[t]
        mat = zeros(N.rank, M.rank, M.ring)
        mat[i][j] = M.ring.monomial(m)
        return Morphism(M, N, (N.parities[i] + M.parities[j]) % 2, mat)

    def elem_parity(self, e: Elem) -> int:
        s, t, i, j, _ = e
        return (self.branes[t].parities[i] + self.branes[s].parities[j]) % 2

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add(out, w, c)
        return CatChain(self.branes, out)

    def is_zero(self):
        return not self.terms


def cat_diff(c: CatChain) -> CatChain:
    """Hochschild differential of the dg category (internal hom_diff plus composition).

    With shifted degrees |x_m| = |a_m| + 1 and eps_m = |x_0| + .. + |x_m|:
      internal term at m:     (-1)^{eps_{m-1}} a_0 .. d(a_m) .. a_k
      composition at (m,m+1): (-1)^{eps_m} a_0 .. (a_m a_{m+1}) .. a_k
      cyclic term:            (-1)^{|x_k| eps_{k-1} + |x_k|} (a_k a_0) a_1 .. a_{k-1}
    and the whole expression is negated (matching ``hochschild_diff`` on R).
    """
    out: Dict = {}
    for w, coeff in c.terms.items():
        k = len(w) - 1
        shifted = [c.elem_parity(e) + 1 for e in w]
        eps = []
        acc = 0
        for s in shifted:
            acc += s
            eps.append(acc)
        morphs = [c.elem_morphism(e) for e in w]
        for m in range(k + 1):
            sign = -1 if (eps[m - 1] if m else 0) % 2 else 1
            dm = hom_diff(morphs[m])
            _accumulate(c, out, morphs[:m] + [dm] + morphs[m + 1:], -sign * coeff)
        for m in range(k):
            sign = -1 if eps[m] % 2 else 1
            prod = _compose_mats(morphs[m], morphs[m + 1])
            _accumulate(c, out, morphs[:m] + [prod] + morphs[m + 2:], -sign * coeff)
        if k >= 1:
            e = shifted[k] * eps[k - 1] + shifted[k]
            sign = -1 if e % 2 else 1
            prod = _compose_mats(morphs[k], morphs[0])
            _accumulate(c, out, [prod] + morphs[1:k], -sign * coeff)
    return CatChain(c.branes, out)


def _compose_mats(a: Morphism, b: Morphism) -> Morphism:
    """The matrix product a b, i.e. the composite a o b."""
    return Morphism(b.source, a.target, a.parity + b.parity, mat_mul(a.matrix, b.matrix, a.ring))


def _accumulate(c: CatChain, out: dict, morphs: List[Morphism], coeff: Fraction):
    if any(f.is_zero() for f in morphs):
        return
    parts = [c._elements(f) for f in morphs]
    for combo in product(*parts):
        v = coeff
        for _, x in combo:
            v *= x
        _add(out, tuple(e for e, _ in combo), v)


def _word_sign(parities: Sequence[int]) -> int:
    """Sign of the graded matrix trace for a cycle of row indices i_0..i_K.

    Contracting e*_{i_m} with e_{i_m} past the suspension of entry m gives
    (-1)^{p(i_m)} for m >= 1; closing the cycle gives (-1)^{(K+1) p(i_0)}.
    """
    K = len(parities) - 1
    e = (K + 1) * parities[0] + sum(parities[1:])
    return -1 if e % 2 else 1


def psi(c: CatChain, L: int, algebra: Optional[CurvedAlgebra] = None) -> TensorChain:
    """Trace map C_H(MF(R, W)) -> C_H(R, W), truncated at L + 1 factors.

    Between consecutive morphisms a_m, a_{m+1} it inserts s >= 0 copies of the
    odd operator of the brane they share, then takes the graded matrix trace.
    """
    if not c.branes:
        raise ValueError("empty brane list")
    algebra = algebra or c.branes[0].algebra
    ring = algebra.ring
    dmats = [b.d_matrix() for b in c.branes]
    out: Dict[Word, Fraction] = {}
    for w, coeff in c.terms.items():
        k = len(w) - 1
        extra = L - k
        if extra < 0:
            continue
        elems = list(w)
        # brane between elem m and elem m+1 is the source of elem m
        gaps = [e[0] for e in elems]
        for counts in _compositions_upto(k + 1, extra):
            # entries: list of (matrix-like accessor); build the sequence
            seq: List = []
            for m, e in enumerate(elems):
                seq.append(("e", e))
                seq.extend([("d", gaps[m])] * counts[m])
            _trace_sequence(seq, c, dmats, coeff, out, ring)
    return TensorChain(algebra, out, L)


def _compositions_upto(parts: int, total_max: int):
    """All tuples of ``parts`` non-negative ints with sum <= total_max."""
    if parts == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions_upto(parts - 1, total_max - first):
            yield (first,) + rest


def _trace_sequence(seq, c: CatChain, dmats, coeff, out, ring):
    """Sum over index cycles of seq[0]_{i0 i1} seq[1]_{i1 i2} .. seq[K]_{iK i0}."""
    first_kind, first = seq[0]
    s, t, i0, j0, m0 = first
    parity_t = c.branes[t].parities
    # partial: list of (current column index, monomials so far, coefficient, row parities)
    states = [(j0, (m0,), Fraction(coeff), (parity_t[i0],))]
    for kind, obj in seq[1:]:
        new = []
        if kind == "e":
            es, et, ei, ej, em = obj
            rowpar = c.branes[et].parities
            for col, mons, v, pars in states:
                if col == ei:
                    new.append((ej, mons + (em,), v, pars + (rowpar[ei],)))
        else:
            D = dmats[obj]
            rowpar = c.branes[obj].parities
            for col, mons, v, pars in states:
                row = D[col]
                for j, entry in enumerate(row):
                    if entry.is_zero():
                        continue
                    for mon, a in entry.items():
                        new.append((j, mons + (mon,), v * a, pars + (rowpar[col],)))
        states = new
        if not states:
            return
    for col, mons, v, pars in states:
        if col != i0:
            continue
        _add(out, mons, v * _word_sign(pars))


def check_psi_chain_map(c: CatChain, L: int) -> Tuple[bool, TensorChain]:
    """Compare hochschild_diff(psi(c)) with psi(cat_diff(c)) on words of <= L factors."""
    lhs = hochschild_diff(psi(c, L)).restrict(L)
    rhs = psi(cat_diff(c), L).restrict(L)
    diff = lhs - rhs
    return diff.is_zero(), diff


# -- homology -----------------------------------------------------------------

@dataclass
class StateSpace:
    """Homology of (Omega, dW ^): zero below the top form degree, J_W dy^1..dy^n on top."""
    W: Poly
    dims: Dict[int, int]
    basis: Tuple[Monomial, ...]

    @property
    def milnor(self) -> int:
        return len(self.basis)

    def basis_forms(self) -> List[Form]:
        ring = self.W.ring
        top = tuple(range(ring.n))
        return [Form.basis(ring, top, ring.monomial(m)) for m in self.basis]

    def by_internal_degree(self, weights: Optional[Sequence[Fraction]] = None) -> Dict[Fraction, int]:
        """Count basis classes by t = k - 2*(weight), with dy^i carrying weight q_i."""
        q = list(weights) if weights is not None else quasi_homogeneous_weights(self.W)
        n = self.W.ring.n
        out: Dict[Fraction, int] = {}
        for m in self.basis:
            t = n - 2 * (sum(a * b for a, b in zip(m, q)) + sum(q))
            out[t] = out.get(t, 0) + 1
        return out


def state_space_homology(W: Poly) -> StateSpace:
    mu = milnor_number(W)  # raises NonIsolatedSingularity
    G = jacobian_basis(W)
    basis = quotient_basis(G).monomials
    n = W.ring.n
    dims = {k: 0 for k in range(n)}
    dims[n] = mu
    return StateSpace(W, dims, tuple(basis))


def quasi_homogeneous_weights(W: Poly) -> Tuple[Fraction, ...]:
    """Weights q_i with every monomial of W of weight 1 (ring's own weights win)."""
    ring = W.ring
    if ring.qh_weights is not None:
        return tuple(Fraction(q) for q in ring.qh_weights)
    if ring.rcharge_weights is not None:
        return tuple(Fraction(q) / 2 for q in ring.rcharge_weights)
    n = ring.n
    rows = [list(m) + [-1] for m in W.terms]
    null = linalg.nullspace_dense(rows) if rows else []
    sols = [v for v in null if v[n]]
    if len(null) == 1 and sols:
        v = sols[0]
        q = tuple(x / v[n] for x in v[:n])
        if all(x > 0 for x in q):
            return q
    degs = {sum(m) for m in W.terms}
    if len(degs) == 1 and 0 not in degs:
        e = degs.pop()
        return tuple(Fraction(1, e) for _ in range(n))
    raise ValueError("W is not quasi-homogeneous with a unique positive weight system")


@dataclass
class HHRow:
    grading: object
    dim: int
    reliable: bool
    weight_cap: Optional[Fraction] = None


@dataclass
class HHTable:
    W: Poly
    L: int
    D: int
    rows: List[HHRow] = field(default_factory=list)

    def reliable_dims(self) -> Dict[object, int]:
        return {r.grading: r.dim for r in self.rows if r.reliable}

    def dims(self) -> Dict[object, int]:
        return {r.grading: r.dim for r in self.rows}


def _words(mons_by_w, k: int, target, q_of) -> List[Word]:
    """Words of k+1 monomials whose weights add up exactly to ``target``."""
    out: List[Word] = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for m, wm in mons_by_w:
            if wm > remaining:
                break
            if slots == 1 and wm != remaining:
                continue
            prefix.append(m)
            rec(prefix, remaining - wm, slots - 1)
            prefix.pop()

    rec([], target, k + 1)
    return out


def hh_truncated_homology(W: Poly, L: int, D: int) -> HHTable:
    """Homology of the Hochschild complex of (R, W) on words of <= L+1 factors and degree <= D.

    For quasi-homogeneous W the complex is graded by t = k - 2*weight, lowered
    by one by the differential.  Degree t is computed on the quotient complex
    of words of weight <= w_t, where w_t is the largest cap compatible with L
    and D; it is flagged reliable when the discarded part cannot carry homology
    in degrees t or t - 1.  For W = 0 rows are indexed by (k, degree).
    """
    ring = W.ring
    algebra = CurvedAlgebra(ring, W)
    if W.is_zero():
        return _classical_table(algebra, L, D)
    q = quasi_homogeneous_weights(W)
    n = ring.n
    qmin = min(q)
    mons = [(m, sum(a * b for a, b in zip(m, q))) for m in monomials_up_to(n, D)]
    mons.sort(key=lambda t: t[1])
    table = HHTable(W, L, D)
    # every t = k - 2w reachable inside the window
    ts = set()
    for k in range(L + 1):
        for w in _weight_sums(mons, k + 1, D * qmin):
            ts.add(k - 2 * w)
    for t in sorted(ts):
        cap = min(Fraction(L - 1) - t, 2 * D * qmin) / 2
        reliable = cap >= 0 and cap >= Fraction(n + 1) / 2 - t / 2
        if cap < 0:
            cap = min(Fraction(L) - t, 2 * D * qmin) / 2
            if cap < 0:
                continue
        dim = _dim_at(algebra, L, mons, q, t, cap)
        table.rows.append(HHRow(t, dim, bool(reliable), cap))
    return table


def _weight_sums(mons, slots, cap):
    """Distinct weight totals of ``slots`` monomials, capped."""
    totals = {Fraction(0)}
    ws = sorted({w for _, w in mons})
    for _ in range(slots):
        totals = {a + b for a in totals for b in ws if a + b <= cap}
    return totals


def _space(mons, q, t, cap, L) -> List[Word]:
    out: List[Word] = []
    for k in range(L + 1):
        w = (k - t) / 2
        if w < 0 or w > cap:
            continue
        out.extend(_words(mons, k, w, q))
    return out


def _diff_images(algebra, L, words, cap, q) -> List[Dict[Word, Fraction]]:
    imgs = []
    for w in words:
        img = hochschild_diff(TensorChain(algebra, {w: Fraction(1)}, L)).terms
        imgs.append({u: c for u, c in img.items() if _wt(u, q) <= cap})
    return imgs


def _wt(word: Word, q) -> Fraction:
    return sum((a * b for m in word for a, b in zip(m, q)), Fraction(0))


def _dim_at(algebra, L, mons, q, t, cap) -> int:
    here = _space(mons, q, t, cap, L)
    above = _space(mons, q, t + 1, cap, L)
    r_out = linalg.rank(_diff_images(algebra, L, here, cap, q))
    r_in = linalg.rank(_diff_images(algebra, L, above, cap, q))
    return len(here) - r_out - r_in


def _classical_table(algebra, L, D) -> HHTable:
    ring = algebra.ring
    n = ring.n
    mons = [(m, Fraction(sum(m))) for m in monomials_up_to(n, D)]
    mons.sort(key=lambda t: t[1])
    unit = tuple(Fraction(1) for _ in range(n))
    table = HHTable(algebra.W, L, D)
    for k in range(L + 1):
        for deg in range(D + 1):
            here = _words(mons, k, Fraction(deg), unit)
            above = _words(mons, k + 1, Fraction(deg), unit) if k + 1 <= L else []
            r_out = linalg.rank(boundary(TensorChain(algebra, {w: Fraction(1)}, L)).terms for w in here)
            r_in = linalg.rank(boundary(TensorChain(algebra, {w: Fraction(1)}, L)).terms for w in above)
            table.rows.append(HHRow((k, deg), len(here) - r_out - r_in, k + 1 <= L))
    return table
