"""Residue pairing, boundary-bulk map and the Kapustin-Li disc correlator."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .factorizations import BraneMismatch, MatrixFactorization, Morphism, compose, ext_basis
from .groebner import GroebnerBasis, QuotientBasis, jacobian_basis, milnor_number, normal_form, quotient_basis
from .hochschild import quasi_homogeneous_weights
from .poly import Form, Monomial, Poly, exterior_d


class ResidueError(ValueError):
    pass


def hessian(W: Poly) -> Poly:
    n = W.ring.n
    H = [[W.partial(i).partial(j) for j in range(n)] for i in range(n)]
    return _det_poly(H, W.ring)


def _det_poly(m, ring) -> Poly:
    # cofactor expansion; n is tiny here
    n = len(m)
    if n == 0:
        return ring.one()
    if n == 1:
        return m[0][0]
    acc = ring.zero()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_poly(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


@dataclass(frozen=True)
class ResidueFunctional:
    W: Poly
    jacobian_gb: GroebnerBasis
    quotient: QuotientBasis
    socle_rep: Poly
    mu: int
    socle_monomial: Monomial
    scale: Fraction

    def __call__(self, h: Poly) -> Fraction:
        return residue(h, self)


def residue_functional(W: Poly) -> ResidueFunctional:
    """Build the residue on R/(dW), normalized so that Res(hess W) = mu."""
    mu = milnor_number(W)
    try:
        q = quasi_homogeneous_weights(W)
    except ValueError as exc:
        raise ResidueError(str(exc)) from None
    G = jacobian_basis(W)
    Q = quotient_basis(G)

    def wt(m):
        return sum(a * b for a, b in zip(m, q))

    top = max(wt(m) for m in Q.monomials)
    tops = [m for m in Q.monomials if wt(m) == top]
    if len(tops) != 1:
        raise ResidueError("top weighted degree of the Milnor ring is not one-dimensional")
    hess = normal_form(hessian(W), G)
    s = hess.coeff(tops[0])
    if hess.is_zero() or not s:
        raise ResidueError("Hessian has zero normal form")
    return ResidueFunctional(W, G, Q, hess, mu, tops[0], Fraction(mu) / s)


def residue(h: Poly, rf) -> Fraction:
    if isinstance(rf, Poly):
        rf = residue_functional(rf)
    nf = normal_form(h, rf.jacobian_gb)
    return nf.coeff(rf.socle_monomial) * rf.scale


# -- boundary-bulk ------------------------------------------------------------

def _form_matmul(a, b, ring):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Form(ring) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            if a[i][t].is_zero():
                continue
            for j in range(m):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + a[i][t].wedge(b[t][j])
    return out


def boundary_bulk(M: MatrixFactorization, alpha: Morphism) -> Form:
    """tau_M(alpha) = sum_k (1/k!) Str(alpha (dd_M)^k), dd_M the matrix of 1-forms."""
    if alpha.source != M or alpha.target != M:
        raise BraneMismatch("boundary_bulk needs an endomorphism of M")
    ring = M.ring
    d = M.d_matrix()
    dd = [[exterior_d(e) for e in row] for row in d]
    cur = [[Form.scalar(e) for e in row] for row in alpha.matrix]
    par = M.parities
    total = Form(ring)
    for k in range(ring.n + 1):
        tr = Form(ring)
        for i in range(M.rank):
            tr = tr - cur[i][i] if par[i] else tr + cur[i][i]
        total = total + tr.scale(Fraction(1, factorial(k)))
        if k < ring.n:
            cur = _form_matmul(cur, dd, ring)
    return total


def kapustin_li(M: MatrixFactorization, alpha: Morphism, rf: ResidueFunctional = None) -> Fraction:
    rf = rf or residue_functional(M.W)
    return residue(boundary_bulk(M, alpha).top_coefficient(), rf)


def kl_pairing(alpha: Morphism, beta: Morphism, rf: ResidueFunctional = None) -> Fraction:
    """<alpha, beta> = KL on the target of alpha of the composite alpha o beta."""
    if alpha.source != beta.target or beta.source != alpha.target:
        raise BraneMismatch("kl_pairing needs alpha: M -> N and beta: N -> M")
    return kapustin_li(alpha.target, compose(alpha, beta), rf)


# -- nondegeneracy ------------------------------------------------------------

@dataclass
class PairBlock:
    source: int
    target: int
    classes: List[Morphism]        # source -> target
    duals: List[Morphism]          # target -> source
    gram: List[List[Fraction]]
    rank: int

    @property
    def nondegenerate(self) -> bool:
        return len(self.classes) == len(self.duals) == self.rank


@dataclass
class NondegeneracyReport:
    blocks: List[PairBlock] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(b.nondegenerate for b in self.blocks)

    def summary(self) -> str:
        if not self.blocks:
            return "no branes"
        lines = []
        for b in self.blocks:
            lines.append(f"{b.source}->{b.target}: {len(b.classes)}x{len(b.duals)} rank {b.rank}")
        lines.append("nondegenerate on computed slice" if self.verdict else "degenerate on computed slice")
        return "\n".join(lines)


def nondegeneracy_report(branes: Sequence[MatrixFactorization], D: int) -> NondegeneracyReport:
    report = NondegeneracyReport()
    if not branes:
        return report
    rf = residue_functional(branes[0].W)
    cache: Dict[Tuple[int, int], List[Morphism]] = {}

    def classes(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = ext_basis(branes[i], branes[j], 0, D) + ext_basis(branes[i], branes[j], 1, D)
        return cache[(i, j)]

    for i in range(len(branes)):
        for j in range(len(branes)):
            fwd, back = classes(i, j), classes(j, i)
            gram = [[kl_pairing(a, b, rf) for b in back] for a in fwd]
            r = linalg.matrix_rank(gram) if gram and back else 0
            report.blocks.append(PairBlock(i, j, fwd, back, gram, r))
    return report
