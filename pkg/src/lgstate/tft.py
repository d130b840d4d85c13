"""Finite-dimensional open TFTs: the closed sector A/[A,A], its pairing and the Cardy condition.

Composition is written in path order: for a in A(E,F) and b in A(F,G) the
product ``ab`` lies in A(E,G).  Vectors are dicts from basis index to Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from . import linalg
from .factorizations import Report

Vec = Dict[int, Fraction]


def _vadd(acc: Dict, v: Dict, c=1):
    for k, x in v.items():
        nv = acc.get(k, 0) + c * x
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


class AxiomError(ValueError):
    pass


class FiniteOpenCategory:
    """Linear category with finitely many objects and finite-dimensional Homs.

    ``comp[(E, F, G)][(i, j)]`` is the vector of e_i * e_j for e_i in A(E,F)
    and e_j in A(F,G); missing entries are zero.
    """

    def __init__(self, branes: Sequence[Hashable], hom_dims: Dict, comp: Dict, identities: Dict):
        self.branes = list(branes)
        self.hom_dims = {k: int(v) for k, v in hom_dims.items()}
        self.comp = {k: {ij: {a: Fraction(x) for a, x in v.items() if x} for ij, v in t.items()}
                     for k, t in comp.items()}
        self.identities = {E: {a: Fraction(x) for a, x in v.items() if x} for E, v in identities.items()}
        self.semisimple_blocks: Optional[Dict] = None

    def dim(self, E, F) -> int:
        return self.hom_dims.get((E, F), 0)

    def mul(self, E, F, G, a: Vec, b: Vec) -> Vec:
        t = self.comp.get((E, F, G), {})
        out: Vec = {}
        for i, x in a.items():
            for j, y in b.items():
                v = t.get((i, j))
                if v:
                    _vadd(out, v, x * y)
        return out

    def basis(self, E, F) -> List[Vec]:
        return [{i: Fraction(1)} for i in range(self.dim(E, F))]

    # -- constructors -------------------------------------------------------
    @classmethod
    def semisimple(cls, multiplicities: Dict[Hashable, Sequence[int]]) -> "FiniteOpenCategory":
        """Branes as direct sums of simples: A(E,F) = sum_b Hom(Q^{m_E,b}, Q^{m_F,b}).

        Basis of A(E,F): (b, r, c) = matrix unit from slot c of E to slot r of F
        in block b, enumerated block by block.
        """
        branes = list(multiplicities)
        nb = len(next(iter(multiplicities.values()))) if branes else 0
        index: Dict = {}
        dims = {}
        for E in branes:
            for F in branes:
                units = []
                for b in range(nb):
                    for r in range(multiplicities[F][b]):
                        for c in range(multiplicities[E][b]):
                            units.append((b, r, c))
                index[(E, F)] = {u: k for k, u in enumerate(units)}
                dims[(E, F)] = len(units)
        comp = {}
        for E, F, G in product(branes, repeat=3):
            t = {}
            for (b, r, c), i in index[(E, F)].items():
                for (b2, r2, c2), j in index[(F, G)].items():
                    # path order: first E->F (unit r<-c), then F->G (unit r2<-c2)
                    if b == b2 and c2 == r:
                        t[(i, j)] = {index[(E, G)][(b, r2, c)]: Fraction(1)}
            comp[(E, F, G)] = t
        ids = {}
        for E in branes:
            ids[E] = {index[(E, E)][(b, r, r)]: Fraction(1)
                      for b in range(nb) for r in range(multiplicities[E][b])}
        cat = cls(branes, dims, comp, ids)
        cat.semisimple_blocks = {"multiplicities": {E: tuple(m) for E, m in multiplicities.items()},
                                 "index": index}
        return cat

    @classmethod
    def matrix_algebra(cls, n: int, label="E") -> "FiniteOpenCategory":
        return cls.semisimple({label: (n,)})

    @classmethod
    def from_algebra(cls, dim: int, table: Dict[Tuple[int, int], Dict[int, object]], unit: Dict[int, object],
                     label="E") -> "FiniteOpenCategory":
        """One brane whose endomorphism algebra has the given structure constants."""
        return cls([label], {(label, label): dim}, {(label, label, label): table}, {label: unit})

    @classmethod
    def dual_numbers(cls, label="E") -> "FiniteOpenCategory":
        """Q[eps]/eps^2 with basis (1, eps)."""
        table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
        return cls.from_algebra(2, table, {0: 1}, label)


def validate_category(A: FiniteOpenCategory) -> Report:
    rep = Report()
    for E, F, G, H in product(A.branes, repeat=4):
        for a, b, c in product(A.basis(E, F), A.basis(F, G), A.basis(G, H)):
            left = A.mul(E, G, H, A.mul(E, F, G, a, b), c)
            right = A.mul(E, F, H, a, A.mul(F, G, H, b, c))
            if left != right:
                rep.fail(axiom="associativity", objects=(E, F, G, H), witness=(a, b, c))
                return rep
    for E, F in product(A.branes, repeat=2):
        for a in A.basis(E, F):
            if A.mul(E, E, F, A.identities[E], a) != a or A.mul(E, F, F, a, A.identities[F]) != a:
                rep.fail(axiom="identity", objects=(E, F), witness=a)
                return rep
    return rep


# -- the closed sector ------------------------------------------------------------

@dataclass
class ClosedSector:
    A: FiniteOpenCategory
    reps: List[Tuple[Hashable, Vec]]          # basis of V as classes of endomorphisms
    pairing: List[List[Fraction]]
    _echelon: object = None
    product: Optional[Dict[Tuple[int, int], Vec]] = None
    trace: Optional[List[Fraction]] = None
    unit: Optional[Vec] = None

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, E, a: Vec) -> Vec:
        """Coordinates of [a] in the V basis, for a in A(E,E)."""
        coeffs = self._echelon.express({(E, i): x for i, x in a.items()})
        if coeffs is None:
            raise AssertionError("element outside the endomorphism span")
        return {k[1]: v for k, v in coeffs.items() if k[0] == "b" and v}

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                _vadd(out, self.product.get((i, j), {}), x * y)
        return out

    def theta(self, u: Vec) -> Fraction:
        return sum((self.trace[i] * x for i, x in u.items()), Fraction(0))

    @property
    def has_frobenius(self) -> bool:
        return self.product is not None and self.trace is not None


def operator_pairing(A: FiniteOpenCategory, E, a: Vec, F, b: Vec) -> Fraction:
    """Tr(x -> a x b) on A(E,F)."""
    total = Fraction(0)
    for i, x in enumerate(A.basis(E, F)):
        y = A.mul(E, F, F, A.mul(E, E, F, a, x), b)
        total += y.get(i, 0)
    return total


def operator_pairing_matrices(A: FiniteOpenCategory, E, a: Vec, F, b: Vec) -> Fraction:
    """Same trace, as tr(L_a R_b) built from the two multiplication matrices."""
    n = A.dim(E, F)
    if n == 0:
        return Fraction(0)
    basis = A.basis(E, F)
    L = [[A.mul(E, E, F, a, basis[j]).get(i, Fraction(0)) for j in range(n)] for i in range(n)]
    R = [[A.mul(E, F, F, basis[j], b).get(i, Fraction(0)) for j in range(n)] for i in range(n)]
    LR = linalg.matmul(R, L)
    return sum((LR[i][i] for i in range(n)), Fraction(0))


def _pair_vectors(A, u: Tuple[Hashable, Vec], v: Tuple[Hashable, Vec]) -> Fraction:
    return operator_pairing(A, u[0], u[1], v[0], v[1])


def commutators(A: FiniteOpenCategory):
    """All ab - ba over basis pairs a in A(E,F), b in A(F,E), as vectors over (brane, index)."""
    for E, F in product(A.branes, repeat=2):
        for a, b in product(A.basis(E, F), A.basis(F, E)):
            v: Dict = {}
            _vadd(v, {(E, i): x for i, x in A.mul(E, F, E, a, b).items()})
            _vadd(v, {(F, i): x for i, x in A.mul(F, E, F, b, a).items()}, -1)
            if v:
                yield v


def commutator_quotient(A: FiniteOpenCategory, check: bool = True) -> ClosedSector:
    if check:
        rep = validate_category(A)
        if not rep.ok:
            raise AxiomError(f"category axioms fail: {rep.failures[0]}")
    comms = list(commutators(A))
    ambient = [(E, {(E, i): Fraction(1)}) for E in A.branes for i in range(A.dim(E, E))]
    chosen = linalg.quotient_basis(comms, [v for _, v in ambient])
    e = linalg.Echelon(track=True)
    for j, c in enumerate(comms):
        e.add(c, tag=("c", j))
    reps = []
    for k, idx in enumerate(chosen):
        E, v = ambient[idx]
        e.add(v, tag=("b", k))
        reps.append((E, {key[1]: x for key, x in v.items()}))
    pairing = [[_pair_vectors(A, u, w) for w in reps] for u in reps]
    cs = ClosedSector(A, reps, pairing, e)
    if A.semisimple_blocks is not None:
        _derive_semisimple_frobenius(cs)
    return cs


def _derive_semisimple_frobenius(cs: ClosedSector):
    """Idempotent basis pi_b = [unit e_11 of block b]; trace(pi_b) = <pi_b, pi_b>."""
    A = cs.A
    info = A.semisimple_blocks
    mult, index = info["multiplicities"], info["index"]
    nb = len(next(iter(mult.values())))
    pis = []
    for b in range(nb):
        E = next((E for E in A.branes if mult[E][b] > 0), None)
        if E is None:
            continue
        pis.append(cs.project(E, {index[(E, E)][(b, 0, 0)]: Fraction(1)}))
    if len(pis) != cs.dim:
        return
    # change of basis: columns of P are the pi_b in rep coordinates
    P = [[pi.get(i, Fraction(0)) for pi in pis] for i in range(cs.dim)]
    Pinv = linalg.inverse(P)

    def to_pi(u: Vec) -> List[Fraction]:
        return [sum((Pinv[r][i] * x for i, x in u.items()), Fraction(0)) for r in range(cs.dim)]

    def from_pi(c: Sequence[Fraction]) -> Vec:
        out: Vec = {}
        for b, x in enumerate(c):
            if x:
                _vadd(out, pis[b], x)
        return out

    theta_pi = []
    for b, pi in enumerate(pis):
        E = next(E for E in A.branes if mult[E][b] > 0)
        rep = (E, {index[(E, E)][(b, 0, 0)]: Fraction(1)})
        theta_pi.append(_pair_vectors(A, rep, rep))
    prod_tab = {}
    for i in range(cs.dim):
        ci = to_pi({i: Fraction(1)})
        for j in range(cs.dim):
            cj = to_pi({j: Fraction(1)})
            prod_tab[(i, j)] = from_pi([x * y for x, y in zip(ci, cj)])
    cs.product = prod_tab
    cs.trace = [sum((t * c for t, c in zip(theta_pi, to_pi({i: Fraction(1)}))), Fraction(0))
                for i in range(cs.dim)]
    cs.unit = from_pi([Fraction(1)] * cs.dim)


# -- checks ----------------------------------------------------------------------

@dataclass
class PairingReport:
    commutator_vanishing: bool
    symmetric: bool
    rank: int
    dim: int
    failures: List[dict] = field(default_factory=list)

    @property
    def nondegenerate(self) -> bool:
        return self.rank == self.dim

    @property
    def ok(self) -> bool:
        return self.commutator_vanishing and self.symmetric and self.nondegenerate


def pairing_checks(cs: ClosedSector) -> PairingReport:
    A = cs.A
    failures = []
    vanish = True
    for c in commutators(A):
        # split the commutator into its brane components
        parts: Dict = {}
        for (E, i), x in c.items():
            parts.setdefault(E, {})[i] = x
        for w in cs.reps:
            left = sum((operator_pairing(A, E, v, w[0], w[1]) for E, v in parts.items()), Fraction(0))
            right = sum((operator_pairing(A, w[0], w[1], E, v) for E, v in parts.items()), Fraction(0))
            if left or right:
                vanish = False
                failures.append({"check": "commutator", "commutator": c, "against": w})
    sym = all(cs.pairing[i][j] == cs.pairing[j][i] for i in range(cs.dim) for j in range(cs.dim))
    if not sym:
        failures.append({"check": "symmetry"})
    r = linalg.matrix_rank(cs.pairing) if cs.dim else 0
    return PairingReport(vanish, sym, r, cs.dim, failures)


@dataclass
class CardyReport:
    ok: bool
    pairs: Dict[Tuple, bool] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)
    adjoint_algebra_map: Optional[bool] = None


def _dual_basis(cs: ClosedSector, E, F):
    """Dual basis of A(F,E) to the standard basis of A(E,F) under theta(T(ab))."""
    A = cs.A
    n, m = A.dim(E, F), A.dim(F, E)
    if n != m:
        return None
    if n == 0:
        return []
    P = [[cs.theta(cs.project(E, A.mul(E, F, E, a, b))) for b in A.basis(F, E)] for a in A.basis(E, F)]
    if linalg.matrix_rank(P) < n:
        return None
    # want eps_i = sum_j c_ij f_j with P c^T = I
    Pinv = linalg.inverse(P)
    return [{j: Pinv[j][i] for j in range(n) if Pinv[j][i]} for i in range(n)]


def cardy_check(A: FiniteOpenCategory, cs: ClosedSector) -> CardyReport:
    if not cs.has_frobenius:
        raise ValueError("Cardy check needs Frobenius data (product and trace) on V")
    rep = CardyReport(ok=True)
    duals = {}
    for E, F in product(A.branes, repeat=2):
        d = _dual_basis(cs, E, F)
        if d is None:
            rep.ok = False
            rep.failures.append({"pair": (E, F), "reason": "open pairing has no dual bases"})
            return rep
        duals[(E, F)] = d
    for E, F in product(A.branes, repeat=2):
        good = True
        eps = duals[(E, F)]
        for a, b in product(A.basis(E, E), A.basis(F, F)):
            lhs = cs.mul(cs.project(E, a), cs.project(F, b))
            acc: Dict = {}
            for e_i, eps_i in zip(A.basis(E, F), eps):
                left = A.mul(E, E, F, a, e_i)
                right = A.mul(F, F, E, b, eps_i)
                _vadd(acc, A.mul(E, F, E, left, right))
            rhs = cs.project(E, acc) if acc else {}
            if lhs != rhs:
                good = False
                rep.failures.append({"pair": (E, F), "alpha": a, "beta": b, "lhs": lhs, "rhs": rhs})
        rep.pairs[(E, F)] = good
        rep.ok = rep.ok and good
    rep.adjoint_algebra_map = _adjoint_is_algebra_map(cs)
    return rep


def _adjoint_is_algebra_map(cs: ClosedSector) -> Optional[bool]:
    """T^dagger: V -> A(E,E) defined by theta(T(a) u) = theta(T(a T^dagger(u))); None if undefined."""
    A = cs.A
    for E in A.branes:
        n = A.dim(E, E)
        if n == 0:
            continue
        basis = A.basis(E, E)
        G = [[cs.theta(cs.project(E, A.mul(E, E, E, a, b))) for b in basis] for a in basis]
        if linalg.matrix_rank(G) < n:
            return None
        Ginv = linalg.inverse(G)

        def dagger(u: Vec) -> Vec:
            rhs = [cs.theta(cs.mul(cs.project(E, a), u)) for a in basis]
            sol = [sum((Ginv[i][j] * rhs[j] for j in range(n)), Fraction(0)) for i in range(n)]
            return {i: x for i, x in enumerate(sol) if x}

        for i in range(cs.dim):
            for j in range(cs.dim):
                u, v = {i: Fraction(1)}, {j: Fraction(1)}
                if dagger(cs.mul(u, v)) != A.mul(E, E, E, dagger(u), dagger(v)):
                    return False
    return True


def frobenius_check(cs: ClosedSector) -> Report:
    rep = Report()
    if not cs.has_frobenius:
        rep.fail(check="data", detail="no product/trace supplied")
        return rep
    n = cs.dim
    e = [{i: Fraction(1)} for i in range(n)]
    for i in range(n):
        for j in range(n):
            if cs.mul(e[i], e[j]) != cs.mul(e[j], e[i]):
                rep.fail(check="commutativity", pair=(i, j))
            for k in range(n):
                if cs.mul(cs.mul(e[i], e[j]), e[k]) != cs.mul(e[i], cs.mul(e[j], e[k])):
                    rep.fail(check="associativity", triple=(i, j, k))
    unit = cs.unit
    if unit is None:
        rep.fail(check="unit", detail="no unit supplied")
    else:
        for i in range(n):
            if cs.mul(unit, e[i]) != e[i]:
                rep.fail(check="unit", element=i)
    form = [[cs.theta(cs.mul(e[i], e[j])) for j in range(n)] for i in range(n)]
    if n and linalg.matrix_rank(form) < n:
        rep.fail(check="nondegeneracy", rank=linalg.matrix_rank(form), dim=n)
    return rep


def with_frobenius(cs: ClosedSector, product: Dict[Tuple[int, int], Dict[int, object]], trace: Sequence,
                   unit: Optional[Dict[int, object]] = None) -> ClosedSector:
    """Attach user-supplied Frobenius data (in the V basis of ``cs``)."""
    cs.product = {k: {a: Fraction(x) for a, x in v.items() if x} for k, v in product.items()}
    cs.trace = [Fraction(x) for x in trace]
    cs.unit = None if unit is None else {a: Fraction(x) for a, x in unit.items() if x}
    return cs
