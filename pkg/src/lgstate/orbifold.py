"""Finite linear group actions on affine space and the orbifold closed sector.

A group element g is an invertible rational matrix acting on Y = Q^n.  It acts
on functions by (g r)(v) = r(g^{-1} v), i.e. y_i -> sum_j (g^{-1})_ij y_j,
which makes r -> g(r) a left action: g(h(r)) = (gh)(r).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .factorizations import MatrixFactorization, Report, mat_mul
from .groebner import NonIsolatedSingularity, jacobian_basis, milnor_number, normal_form, quotient_basis
from .poly import Monomial, Poly, RingSpec, monomials_up_to

Matrix = Tuple[Tuple[Fraction, ...], ...]


def _frac_matrix(m) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _mmul(a: Matrix, b: Matrix) -> Matrix:
    return _frac_matrix(linalg.matmul(a, b))


class GroupAction:
    def __init__(self, elements: Sequence, mult_table=None, identity_index=None, inverse_table=None):
        self.elements: List[Matrix] = [_frac_matrix(g) for g in elements]
        if not self.elements:
            raise ValueError("a group needs at least one element")
        self.n = len(self.elements[0])
        index = {g: i for i, g in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise ValueError("duplicate group elements")
        self.closure_failures: List[Tuple[int, int]] = []
        if mult_table is None:
            mult_table = []
            for i, a in enumerate(self.elements):
                row = []
                for j, b in enumerate(self.elements):
                    k = index.get(_mmul(a, b))
                    if k is None:
                        self.closure_failures.append((i, j))
                        k = -1
                    row.append(k)
                mult_table.append(row)
        self.mult_table = [list(r) for r in mult_table]
        ident = _frac_matrix([[int(i == j) for j in range(self.n)] for i in range(self.n)])
        self.identity_index = index.get(ident, -1) if identity_index is None else identity_index
        if inverse_table is None:
            inverse_table = []
            for i in range(len(self.elements)):
                inv = next((j for j in range(len(self.elements)) if self.mult_table[i][j] == self.identity_index), -1)
                inverse_table.append(inv)
        self.inverse_table = list(inverse_table)

    @classmethod
    def generated_by(cls, gens: Sequence, max_order: int = 10000) -> "GroupAction":
        gens = [_frac_matrix(g) for g in gens]
        n = len(gens[0])
        ident = _frac_matrix([[int(i == j) for j in range(n)] for i in range(n)])
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = _mmul(a, g)
                    if b not in seen:
                        seen.add(b)
                        elems.append(b)
                        nxt.append(b)
                        if len(elems) > max_order:
                            raise ValueError("generated group is too large (infinite order element?)")
            frontier = nxt
        return cls(elems)

    @classmethod
    def trivial(cls, n: int) -> "GroupAction":
        return cls([[[int(i == j) for j in range(n)] for i in range(n)]])

    @staticmethod
    def diagonal_cyclic(order: int, n: int) -> "GroupAction":
        """Z_order acting with weight 1 on every coordinate.

        Orders 1 and 2 are rational matrices; higher orders need a root of
        unity and come back as a ``CyclotomicAction``.
        """
        if order == 1:
            return GroupAction.trivial(n)
        if order == 2:
            return GroupAction.generated_by([[[-int(i == j) for j in range(n)] for i in range(n)]])
        return CyclotomicAction(order, [1] * n)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.mult_table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse_table[i]

    def matrix(self, i: int) -> Matrix:
        return self.elements[i]

    zeta_order: Optional[int] = None

    def ext_ring(self, ring: RingSpec) -> RingSpec:
        """Ring carrying the scalars of the action (``ring`` itself for rational matrices)."""
        return ring

    def lift(self, p: Poly) -> Poly:
        return p

    def reduce(self, p: Poly) -> Poly:
        return p

    def act(self, i: int, r: Poly) -> Poly:
        """g_i(r)."""
        if r.ring.n != self.n:
            raise ActionMismatch(f"group acts on {self.n} coordinates, polynomial has {r.ring.n}")
        return r.linear_substitute(self.elements[self.inv(i)])

    def fixed_basis(self, i: int) -> List[List[Fraction]]:
        m = self.matrix(i)
        n = self.n
        a = [[m[r][c] - (1 if r == c else 0) for c in range(n)] for r in range(n)]
        return [[Fraction(x) for x in v] for v in linalg.nullspace_dense(a)]

    def __eq__(self, other):
        return isinstance(other, GroupAction) and self.elements == other.elements

    def __hash__(self):
        return hash(tuple(self.elements))


def cyclotomic_poly(m: int) -> List[int]:
    """Integer coefficients (constant first) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            den = cyclotomic_poly(d)
            # exact division num / den, both monic
            q = [0] * (len(num) - len(den) + 1)
            rem = list(num)
            for k in range(len(q) - 1, -1, -1):
                c = rem[k + len(den) - 1]
                q[k] = c
                for j, b in enumerate(den):
                    rem[k + j] -= c * b
            num = q
    return num


class CyclotomicAction(GroupAction):
    """Z_m acting diagonally, generator y_i -> zeta^{w_i} y_i with zeta a primitive m-th root.

    Scalars live in Q[zeta]/Phi_m(zeta); the extra ring variable ``zeta`` is
    appended after the coordinates and every result is reduced modulo Phi_m.
    """

    def __init__(self, order: int, weights: Sequence[int]):
        if order < 1:
            raise ValueError("order must be positive")
        self.zeta_order = order
        self.weights = tuple(int(w) for w in weights)
        self.n = len(self.weights)
        self.elements = list(range(order))
        self.closure_failures = []
        self.mult_table = [[(a + b) % order for b in range(order)] for a in range(order)]
        self.identity_index = 0
        self.inverse_table = [(-a) % order for a in range(order)]
        self._phi = cyclotomic_poly(order)

    def matrix(self, i: int):
        raise ValueError("a cyclotomic action has no rational matrix; use fixed_basis/act")

    def ext_ring(self, ring: RingSpec) -> RingSpec:
        if ring.variables and ring.variables[-1] == "zeta" and ring.n == self.n + 1:
            return ring
        return RingSpec(ring.variables + ("zeta",))

    def lift(self, p: Poly) -> Poly:
        E = self.ext_ring(p.ring)
        if E is p.ring or E == p.ring:
            return p
        return Poly(E, {m + (0,): c for m, c in p.items()})

    def reduce(self, p: Poly) -> Poly:
        ring = p.ring
        if ring.n == 0 or ring.variables[-1] != "zeta":
            return p
        deg = len(self._phi) - 1
        out: Dict = {}
        for m, c in p.items():
            e = m[-1] % self.zeta_order
            base = m[:-1]
            vec = {e: Fraction(c)}
            # rewrite zeta^e for e >= deg with the monic Phi_m
            for k in range(max(vec), deg - 1, -1):
                v = vec.pop(k, 0)
                if v:
                    for j, b in enumerate(self._phi[:-1]):
                        if b:
                            vec[k - deg + j] = vec.get(k - deg + j, 0) - v * b
            for k, v in vec.items():
                if v:
                    key = base + (k,)
                    nv = out.get(key, 0) + v
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return Poly(ring, out)

    def act(self, i: int, r: Poly) -> Poly:
        r = self.lift(r)
        if r.ring.n != self.n + 1:
            raise ActionMismatch(f"group acts on {self.n} coordinates, polynomial has {r.ring.n - 1}")
        k = self.inv(i)  # g(r)(v) = r(g^{-1} v)
        out = {}
        for m, c in r.items():
            e = (k * sum(a * w for a, w in zip(m[:-1], self.weights))) % self.zeta_order
            key = m[:-1] + (m[-1] + e,)
            out[key] = out.get(key, 0) + c
        return self.reduce(Poly(r.ring, out))

    def fixed_basis(self, i: int) -> List[List[Fraction]]:
        out = []
        for j, w in enumerate(self.weights):
            if (i * w) % self.zeta_order == 0:
                out.append([Fraction(int(t == j)) for t in range(self.n)])
        return out

    def __eq__(self, other):
        return isinstance(other, CyclotomicAction) and (self.zeta_order, self.weights) == (other.zeta_order, other.weights)

    def __hash__(self):
        return hash((self.zeta_order, self.weights))


def validate_action(G: GroupAction, W: Optional[Poly] = None) -> Report:
    rep = Report()
    for i, j in G.closure_failures:
        rep.fail(axiom="closure", pair=(i, j))
    if isinstance(G, CyclotomicAction):
        if W is not None:
            for i in range(G.order):
                if G.act(i, W) != G.lift(W):
                    rep.fail(axiom="invariance", element=i, witness=f"g(W) = {G.act(i, W)} != {W}")
        return rep
    if G.identity_index < 0:
        rep.fail(axiom="identity", detail="identity matrix missing")
    for i, inv in enumerate(G.inverse_table):
        if inv < 0:
            rep.fail(axiom="inverse", element=i)
    m = G.mult_table
    N = G.order
    if rep.ok:
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    if m[m[a][b]][c] != m[a][m[b][c]]:
                        rep.fail(axiom="associativity", triple=(a, b, c))
                        return rep
    for i, g in enumerate(G.elements):
        if linalg.det(g) == 0:
            rep.fail(axiom="invertible", element=i)
    if W is not None:
        if W.ring.n != G.n:
            rep.fail(axiom="dimension", detail=f"group acts on {G.n} coordinates, ring has {W.ring.n}")
            return rep
        for i in range(N):
            gW = G.act(i, W)
            if gW != W:
                rep.fail(axiom="invariance", element=i, witness=f"g(W) = {gW} != {W}")
        ring = W.ring
        if ring.grading_mode == "Z" and rep.ok:
            # each g must preserve the R-charge grading: mixing only equal-charge coordinates
            w = ring.rcharge_weights
            for i, g in enumerate(G.elements):
                for a in range(G.n):
                    for b in range(G.n):
                        if g[a][b] and w[a] != w[b]:
                            rep.fail(axiom="rcharge", element=i, entry=(a, b))
    return rep


# -- twisted group ring ---------------------------------------------------------

class ActionMismatch(ValueError):
    pass


class GroupRingElement:
    """sum_g r_g (x) g in R x| Q[G]."""

    def __init__(self, action: GroupAction, ring: RingSpec, coeffs: Dict[int, Poly] = None):
        self.action = action
        self.ring = ring
        self.coeffs = {g: p for g, p in (coeffs or {}).items() if not p.is_zero()}

    @classmethod
    def basis(cls, action, ring, g: int, r: Optional[Poly] = None):
        return cls(action, ring, {g: r if r is not None else ring.one()})

    def _check(self, other):
        if not isinstance(other, GroupRingElement) or other.action != self.action or other.ring != self.ring:
            raise ActionMismatch("elements of different twisted group rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for g, p in other.coeffs.items():
            out[g] = out[g] + p if g in out else p
        return GroupRingElement(self.action, self.ring, out)

    def __neg__(self):
        return GroupRingElement(self.action, self.ring, {g: -p for g, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GroupRingElement(self.action, self.ring, {g: p.scale(c) for g, p in self.coeffs.items()})

    def __mul__(self, other):
        return twisted_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.action == other.action and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({p})*g{g}" for g, p in sorted(self.coeffs.items()))


def twisted_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """(r g)(s h) = r g(s) gh."""
    a._check(b)
    G = a.action
    out: Dict[int, Poly] = {}
    for g, r in a.coeffs.items():
        for h, s in b.coeffs.items():
            k = G.mul(g, h)
            term = r * G.act(g, s)
            out[k] = out[k] + term if k in out else term
    return GroupRingElement(G, a.ring, out)


# -- fixed loci -----------------------------------------------------------------

def fixed_locus(G: GroupAction, g: int) -> List[List[Fraction]]:
    """Basis (column vectors) of ker(g - 1)."""
    return G.fixed_basis(g)


# -- doubled ring and delta decomposition -------------------------------------------

def doubled_ring(ring: RingSpec, G: Optional[GroupAction] = None) -> RingSpec:
    """R (x) R with variables v_l, v_r (plus the shared ``zeta`` for cyclotomic actions)."""
    names = tuple(f"{v}_l" for v in ring.variables) + tuple(f"{v}_r" for v in ring.variables)
    if G is not None and G.zeta_order is not None:
        names += ("zeta",)
    return RingSpec(names)


def _embed(r: Poly, RR: RingSpec, side: str, n: Optional[int] = None) -> Poly:
    n = r.ring.n if n is None else n
    gens = RR.gens()
    imgs = list(gens[:n] if side == "l" else gens[n:2 * n])
    if r.ring.n == n + 1:
        imgs.append(gens[2 * n])
    return r.substitute(imgs, RR)


def koszul_z(G: GroupAction, g: int, ring: RingSpec) -> List[Poly]:
    """z_i = g(y_i) (x) 1 - 1 (x) y_i in the doubled ring."""
    RR = doubled_ring(ring, G)
    n = ring.n
    out = []
    for i, y in enumerate(ring.gens()):
        out.append(_embed(G.act(g, y), RR, "l", n) - _embed(y, RR, "r", n))
    return out


def delta_decompose(r: Poly, G: GroupAction, g: int) -> List[Poly]:
    """delta^g_i(r) with g(r)(x)1 - 1(x)r = sum_i delta_i z_i.

    Telescoping through the mixed points (v_1..v_{i-1}, *, u_{i+1}..u_n)
    with u = g(y) (x) 1 and v = 1 (x) y, dividing each step exactly.
    """
    ring = r.ring
    n = ring.n
    RR = doubled_ring(ring, G)
    u = [_embed(G.act(g, y), RR, "l", n) for y in ring.gens()]
    v = list(RR.gens()[n:])
    out = [RR.zero() for _ in range(n)]
    upow: Dict[Tuple[int, int], Poly] = {}
    vpow: Dict[Tuple[int, int], Poly] = {}

    def power(cache, base, i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = base[i] ** e
        return cache[key]

    for m, c in r.items():
        for i in range(n):
            a = m[i]
            if a == 0:
                continue
            pre = RR.const(c)
            for j in range(i):
                if m[j]:
                    pre = pre * power(vpow, v, j, m[j])
            for j in range(i + 1, n):
                if m[j]:
                    pre = pre * power(upow, u, j, m[j])
            dd = RR.zero()
            for s in range(a):
                dd = dd + power(upow, u, i, s) * power(vpow, v, i, a - 1 - s)
            out[i] = out[i] + pre * dd
    return [G.reduce(p) for p in out]


def delta_reconstruction_ok(r: Poly, G: GroupAction, g: int) -> bool:
    n = r.ring.n
    RR = doubled_ring(r.ring, G)
    lhs = _embed(G.act(g, r), RR, "l", n) - _embed(r, RR, "r", n)
    z = koszul_z(G, g, r.ring)
    rhs = RR.zero()
    for d, zi in zip(delta_decompose(r, G, g), z):
        rhs = rhs + d * zi
    return G.reduce(lhs - rhs).is_zero()


def twisted_leibniz_defect(r: Poly, s: Poly, G: GroupAction, g: int) -> List[Poly]:
    """delta(rs) - (g(r)(x)1) delta(s) - delta(r)(1(x)s), componentwise."""
    n = r.ring.n
    RR = doubled_ring(r.ring, G)
    gl = _embed(G.act(g, r), RR, "l", n)
    sr = _embed(s, RR, "r", n)
    drs = delta_decompose(r * s, G, g)
    dr = delta_decompose(r, G, g)
    ds = delta_decompose(s, G, g)
    return [G.reduce(a - gl * b - c * sr) for a, b, c in zip(drs, ds, dr)]


def twisted_leibniz_ok(r: Poly, s: Poly, G: GroupAction, g: int) -> bool:
    return all(p.is_zero() for p in twisted_leibniz_defect(r, s, G, g))


def leibniz_defect_is_syzygy(r: Poly, s: Poly, G: GroupAction, g: int) -> bool:
    """sum_i defect_i z_i = 0: the rule holds modulo Koszul syzygies of the z_i.

    In one variable there are no syzygies, so this is the exact rule.  For
    n >= 2 no choice of delta can satisfy the rule on the nose: applied to
    y_1 y_2 it forces delta(y_j) = a z_j, contradicting reconstruction.
    """
    z = koszul_z(G, g, r.ring)
    RR = z[0].ring
    total = RR.zero()
    for d, zi in zip(twisted_leibniz_defect(r, s, G, g), z):
        total = total + d * zi
    return G.reduce(total).is_zero()


# -- deformed Koszul complex ------------------------------------------------------

KForm = Dict[Tuple[int, ...], Poly]


def _kadd(acc: KForm, idx, p: Poly):
    if p.is_zero():
        return
    q = acc[idx] + p if idx in acc else p
    if q.is_zero():
        acc.pop(idx, None)
    else:
        acc[idx] = q


def _contract(form: KForm, z: Sequence[Poly]) -> KForm:
    """Contraction with sum_i z_i d/dy^i."""
    out: KForm = {}
    for idx, p in form.items():
        for t, i in enumerate(idx):
            term = p * z[i]
            _kadd(out, idx[:t] + idx[t + 1:], term if t % 2 == 0 else -term)
    return out


def _wedge_one(form: KForm, coeffs: Sequence[Poly]) -> KForm:
    """(sum_i c_i dy^i) ^ form."""
    out: KForm = {}
    for idx, p in form.items():
        for i, c in enumerate(coeffs):
            if i in idx or c.is_zero():
                continue
            pos = sum(1 for j in idx if j < i)
            new = tuple(sorted(idx + (i,)))
            term = c * p
            _kadd(out, new, term if pos % 2 == 0 else -term)
    return out


def koszul_differential(form: KForm, z, dW) -> KForm:
    out = _contract(form, z)
    if dW is not None:
        for idx, p in _wedge_one(form, dW).items():
            _kadd(out, idx, p)
    return out


def koszul_square_check(G: GroupAction, g: int, W: Poly, degree: int = 4) -> Report:
    """(d^K + d^K_W)^2 = W(x)1 - 1(x)W on r dy^I, r a doubled-ring monomial of degree <= degree."""
    rep = Report()
    ring = W.ring
    n = ring.n
    RR = doubled_ring(ring, G)
    z = koszul_z(G, g, ring)
    dW = None if W.is_zero() else delta_decompose(W, G, g)
    curv = _embed(W, RR, "l", n) - _embed(W, RR, "r", n)
    pad = (0,) * (RR.n - 2 * n)
    mons = monomials_up_to(2 * n, degree)
    for k in range(n + 1):
        for idx in combinations(range(n), k):
            for m in mons:
                form = {idx: RR.monomial(m + pad)}
                sq = koszul_differential(koszul_differential(form, z, dW), z, dW)
                sq = {i: G.reduce(p) for i, p in sq.items()}
                sq = {i: p for i, p in sq.items() if not p.is_zero()}
                expect: KForm = {}
                _kadd(expect, idx, RR.monomial(m + pad) * curv)
                if sq != expect:
                    rep.fail(element=g, form_index=idx, monomial=m, witness=str(sq))
                    return rep
    return rep


def koszul_equivariance_check(G: GroupAction, W: Poly) -> Report:
    """(f x h) d^K_{W,g} = d^K_{W,fgh} (f x h) on generators dy^i, all f, g, h.

    (f x h) acts on left coefficients by f, on right coefficients and on the
    dy^i by h^{-1}.
    """
    rep = Report()
    ring = W.ring
    n = ring.n
    RR = doubled_ring(ring, G)
    N = G.order

    def act_pair(p: Poly, f: int, h: int) -> Poly:
        imgs = []
        hinv = G.inv(h)
        for y in ring.gens():
            imgs.append(_embed(G.act(f, y), RR, "l", n))
        for y in ring.gens():
            imgs.append(_embed(G.act(hinv, y), RR, "r", n))
        imgs.extend(RR.gens()[2 * n:])
        return G.reduce(p.substitute(imgs, RR))

    def act_dy(h: int) -> List[List[Poly]]:
        # h^{-1}(dy^i) = d(h^{-1}(y_i)) = sum_j c_ij dy^j with constant c_ij
        hinv = G.inv(h)
        out = []
        for y in ring.gens():
            img = _embed(G.act(hinv, y), RR, "l", n)
            out.append([img.partial(j) for j in range(n)])
        return out

    deltas = {g: delta_decompose(W, G, g) for g in range(N)}
    for f in range(N):
        for h in range(N):
            hm = act_dy(h)
            for g in range(N):
                k = G.mul(G.mul(f, g), h)
                # one-form sum_i delta^g_i dy^i pushed forward
                lhs = [RR.zero() for _ in range(n)]
                for i in range(n):
                    c = act_pair(deltas[g][i], f, h)
                    for j in range(n):
                        if not hm[i][j].is_zero():
                            lhs[j] = lhs[j] + c * hm[i][j]
                lhs = [G.reduce(p) for p in lhs]
                if lhs != deltas[k]:
                    rep.fail(f=f, g=g, h=h, witness=[str(p) for p in lhs])
    return rep


# -- conjugacy classes and sectors ------------------------------------------------

@dataclass
class ConjugacyData:
    classes: List[List[int]]
    centralizers: Dict[int, List[int]]


def conjugacy_data(G: GroupAction) -> ConjugacyData:
    N = G.order
    seen = set()
    classes = []
    for g in range(N):
        if g in seen:
            continue
        cls = sorted({G.mul(G.mul(f, g), G.inv(f)) for f in range(N)})
        seen.update(cls)
        classes.append(cls)
    cents = {g: [f for f in range(N) if G.mul(f, g) == G.mul(g, f)] for g in range(N)}
    if sum(len(c) for c in classes) != N:
        raise AssertionError("class equation failed")
    for c in classes:
        if len(c) * len(cents[c[0]]) != N:
            raise AssertionError("orbit-stabilizer failed")
    return ConjugacyData(classes, cents)


@dataclass
class SectorData:
    g: int
    fixed_basis: List[List[Fraction]]
    W_g: Optional[Poly]
    mu_g: object
    centralizer: List[int]
    invariant_dim: int
    jacobi_basis: Tuple[Monomial, ...] = ()
    traces: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.fixed_basis)


@dataclass
class Spectrum:
    sectors: List[SectorData]

    @property
    def total(self) -> int:
        return sum(s.invariant_dim for s in self.sectors)

    def by_form_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for s in self.sectors:
            out[s.dim] = out.get(s.dim, 0) + s.invariant_dim
        return out


def _restrict_matrix(G: GroupAction, f: int, basis) -> List[List[Fraction]]:
    """Matrix A with f B = B A for the fixed-locus basis B (columns)."""
    m = G.matrix(f)
    k = len(basis)
    n = G.n
    images = [[sum(m[i][j] * b[j] for j in range(n)) for i in range(n)] for b in basis]
    # solve B a = image for each column
    cols = [{i: b[i] for i in range(n) if b[i]} for b in basis]
    e = linalg.Echelon(track=True)
    for t, c in enumerate(cols):
        e.add(c, tag=t)
    A = [[Fraction(0)] * k for _ in range(k)]
    for col, img in enumerate(images):
        coeffs = e.express({i: x for i, x in enumerate(img) if x})
        if coeffs is None:
            raise ValueError("element does not preserve the fixed locus")
        for t, c in coeffs.items():
            A[t][col] = c
    return A


def orbifold_spectrum(G: GroupAction, W: Poly) -> Spectrum:
    """Per conjugacy class representative g: dim of C_g-invariants of J_g vol_g."""
    ring = W.ring
    data = conjugacy_data(G)
    sectors = []
    for cls in data.classes:
        g = cls[0]
        B = fixed_locus(G, g)
        k = len(B)
        cent = data.centralizers[g]
        if k == 0:
            traces = {f: Fraction(1) for f in cent}
            sectors.append(SectorData(g, B, None, "zero-locus-trivial", cent, 1, ((),), traces))
            continue
        sub = RingSpec(tuple(f"t{i}" for i in range(k)))
        t = sub.gens()
        imgs = [sum((t[j].scale(B[j][i]) for j in range(k)), sub.zero()) for i in range(ring.n)]
        Wg = W.substitute(imgs, sub)
        if Wg.is_constant():
            raise NonIsolatedSingularity(f"sector {g}: restricted potential is constant on a positive-dimensional fixed locus")
        mu = milnor_number(Wg)
        J = jacobian_basis(Wg)
        basis = quotient_basis(J).monomials
        if isinstance(G, CyclotomicAction):
            sectors.append(_cyclotomic_sector(G, g, B, Wg, mu, cent, basis))
            continue
        traces = {}
        for f in cent:
            A = _restrict_matrix(G, f, B)
            detA = linalg.det(A)
            tr = Fraction(0)
            for m in basis:
                img = normal_form(sub.monomial(m).linear_substitute(A), J)
                tr += img.coeff(m)
            traces[f] = detA * tr
        inv = sum(traces.values()) / len(cent)
        if inv.denominator != 1:
            raise AssertionError("character average is not an integer")
        sectors.append(SectorData(g, B, Wg, mu, cent, int(inv), tuple(basis), traces))
    return Spectrum(sectors)


def _cyclotomic_sector(G: "CyclotomicAction", g, B, Wg, mu, cent, basis) -> SectorData:
    """Diagonal actions: monomials are eigenvectors, so count trivial characters.

    ``traces`` records, per f, the exponent e with trace(f) = sum zeta^e over the basis.
    """
    fixed = [next(j for j, x in enumerate(b) if x) for b in B]
    wts = [G.weights[j] for j in fixed]
    m = G.zeta_order
    count = 0
    for mono in basis:
        e = sum(a * w for a, w in zip(mono, wts)) + sum(wts)
        if e % m == 0:
            count += 1
    return SectorData(g, B, Wg, mu, cent, count, tuple(basis), {})


def validate_equivariant_mf(M: MatrixFactorization, G: GroupAction, rho: Sequence) -> Report:
    """rho(g) g(d_M) rho(g)^{-1} = d_M, rho a parity-preserving representation."""
    rep = Report()
    rhos = [_frac_matrix(r) for r in rho]
    N = G.order
    if len(rhos) != N:
        rep.fail(check="representation", detail=f"{len(rhos)} matrices for {N} group elements")
        return rep
    par = M.parities
    for i, r in enumerate(rhos):
        if len(r) != M.rank:
            rep.fail(check="representation", element=i, detail="wrong size")
            return rep
        for a in range(M.rank):
            for b in range(M.rank):
                if r[a][b] and par[a] != par[b]:
                    rep.fail(check="parity", element=i, entry=(a, b))
    for a in range(N):
        for b in range(N):
            if _mmul(rhos[a], rhos[b]) != rhos[G.mul(a, b)]:
                rep.fail(check="representation", pair=(a, b))
    if not rep.ok:
        return rep
    ring = M.ring
    d = M.d_matrix()
    for i in range(N):
        gd = [[G.act(i, e) for e in row] for row in d]
        R = [[ring.const(x) for x in row] for row in rhos[i]]
        Rinv = [[ring.const(x) for x in row] for row in linalg.inverse(rhos[i])]
        conj = mat_mul(mat_mul(R, gd, ring), Rinv, ring)
        for a in range(M.rank):
            for b in range(M.rank):
                if conj[a][b] != d[a][b]:
                    rep.fail(check="intertwining", element=i, entry=(a, b),
                             witness=f"{conj[a][b]} != {d[a][b]}")
    return rep
