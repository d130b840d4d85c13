"""Buchberger's algorithm, normal forms and standard-monomial bases."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .poly import Monomial, Poly, RingSpec


class NotZeroDimensional(ValueError):
    pass


class NonIsolatedSingularity(ValueError):
    pass


def _lex(m):
    return m


def _deglex(m):
    return (sum(m), m)


def _degrevlex(m):
    return (sum(m), tuple(-e for e in reversed(m)))


ORDERS: Dict[str, Callable] = {"lex": _lex, "deglex": _deglex, "degrevlex": _degrevlex}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _lead(terms: dict, key) -> Monomial:
    return max(terms, key=key)


def _shift_scale(terms: dict, mono: Monomial, c: Fraction) -> dict:
    return {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in terms.items()}


def _reduce(terms: dict, basis: List[dict], leads: List[Monomial], key) -> dict:
    """Full multivariate division remainder of ``terms`` by monic ``basis``."""
    p = dict(terms)
    rem = {}
    while p:
        lm = _lead(p, key)
        lc = p[lm]
        for g, gl in zip(basis, leads):
            if _divides(gl, lm):
                q = _sub(lm, gl)
                for m, v in g.items():
                    mm = tuple(x + y for x, y in zip(m, q))
                    nv = p.get(mm, 0) - lc * v
                    if nv:
                        p[mm] = nv
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[lm] = lc
            del p[lm]
    return rem


def _monic(terms: dict, key) -> dict:
    lc = terms[_lead(terms, key)]
    return {m: v / lc for m, v in terms.items()}


@dataclass(frozen=True)
class GroebnerBasis:
    ring: RingSpec
    order: str
    generators: Tuple[Poly, ...]

    @property
    def key(self):
        return ORDERS[self.order]

    @property
    def leading_monomials(self) -> Tuple[Monomial, ...]:
        return tuple(_lead(g._terms, self.key) for g in self.generators)

    def is_unit_ideal(self) -> bool:
        return any(not any(m) for m in self.leading_monomials)

    def is_zero_dimensional(self) -> bool:
        leads = self.leading_monomials
        for i in range(self.ring.n):
            if not any(m[i] > 0 and sum(m) == m[i] for m in leads):
                return False
        return True

    def check(self) -> bool:
        """Re-certify: every S-polynomial reduces to zero."""
        key = self.key
        gs = [g._terms for g in self.generators]
        leads = list(self.leading_monomials)
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                if _reduce(_spoly(gs[i], gs[j], leads[i], leads[j]), gs, leads, key):
                    return False
        return True


def _spoly(f: dict, g: dict, lf: Monomial, lg: Monomial) -> dict:
    l = _lcm(lf, lg)
    a = _shift_scale(f, _sub(l, lf), 1 / Fraction(f[lf]))
    b = _shift_scale(g, _sub(l, lg), 1 / Fraction(g[lg]))
    for m, v in b.items():
        nv = a.get(m, 0) - v
        if nv:
            a[m] = nv
        else:
            a.pop(m, None)
    return a


def buchberger(gens: Sequence[Poly], order: str = "degrevlex") -> GroebnerBasis:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    key = ORDERS[order]
    basis: List[dict] = []
    leads: List[Monomial] = []
    for g in gens:
        if g.is_zero():
            continue
        r = _reduce(g._terms, basis, leads, key) if basis else dict(g._terms)
        if r:
            r = _monic(r, key)
            basis.append(r)
            leads.append(_lead(r, key))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pairs:
        # sugar-free normal strategy: smallest lcm first
        i, j = min(pairs, key=lambda p: (key(_lcm(leads[p[0]], leads[p[1]])), p))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(not (a and b) for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        l = _lcm(li, lj)
        if any(k not in (i, j) and _divides(leads[k], l)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue  # chain criterion
        r = _reduce(_spoly(basis[i], basis[j], li, lj), basis, leads, key)
        if r:
            r = _monic(r, key)
            n = len(basis)
            basis.append(r)
            leads.append(_lead(r, key))
            pairs |= {(k, n) for k in range(n)}
    return GroebnerBasis(ring, order, tuple(_interreduce(basis, leads, key, ring)))


def _interreduce(basis, leads, key, ring) -> List[Poly]:
    keep = []
    for i, li in enumerate(leads):
        if any(j != i and _divides(lj, li) and (lj != li or j < i) for j, lj in enumerate(leads)):
            continue
        keep.append(i)
    gs = [basis[i] for i in keep]
    ls = [leads[i] for i in keep]
    out = []
    for i in range(len(gs)):
        others = [g for j, g in enumerate(gs) if j != i]
        olead = [l for j, l in enumerate(ls) if j != i]
        tail = {m: v for m, v in gs[i].items() if m != ls[i]}
        red = _reduce(tail, others, olead, key)
        red[ls[i]] = Fraction(1)
        out.append((ls[i], Poly(ring, red)))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return [p for _, p in out]


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    if p.ring != G.ring:
        raise ValueError("polynomial and basis live in different rings")
    return Poly(p.ring, _reduce(p._terms, [g._terms for g in G.generators], list(G.leading_monomials), G.key),
                _clean=True)


@dataclass(frozen=True)
class QuotientBasis:
    monomials: Tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


def quotient_basis(G: GroebnerBasis) -> QuotientBasis:
    if G.is_unit_ideal():
        return QuotientBasis(())
    if not G.is_zero_dimensional():
        raise NotZeroDimensional("quotient ring is not finite-dimensional")
    leads = G.leading_monomials
    n = G.ring.n
    found = set()
    frontier = [(0,) * n]
    while frontier:
        m = frontier.pop()
        if m in found or any(_divides(l, m) for l in leads):
            continue
        found.add(m)
        for i in range(n):
            e = list(m)
            e[i] += 1
            frontier.append(tuple(e))
    return QuotientBasis(tuple(sorted(found, key=lambda m: (sum(m), tuple(-x for x in m)))))


def jacobian_ideal(W: Poly) -> List[Poly]:
    return [W.partial(i) for i in range(W.ring.n)]


def jacobian_basis(W: Poly, order: str = "degrevlex") -> GroebnerBasis:
    parts = [d for d in jacobian_ideal(W) if not d.is_zero()]
    if not parts:
        return GroebnerBasis(W.ring, order, ())
    return buchberger(parts, order)


def milnor_number(W: Poly) -> int:
    if W.is_constant():
        raise ValueError("W must be non-constant")
    G = jacobian_basis(W)
    try:
        return quotient_basis(G).dimension
    except NotZeroDimensional:
        raise NonIsolatedSingularity("Jacobian ideal is not zero-dimensional") from None
