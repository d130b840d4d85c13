"""Sparse multivariate polynomials and differential forms over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero ``Fraction``
coefficients.  Forms map strictly increasing index tuples to polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from . import kernels

Monomial = Tuple[int, ...]


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring Q[y_1..y_n] with its gradings.

    ``grading_mode`` is ``"Z"`` (even integer R-charge, weights required) or
    ``"Z2"``.  ``qh_weights`` are the quasi-homogeneous weights used by the
    residue, normalized so that W has weight 1.
    """

    variables: Tuple[str, ...]
    grading_mode: str = "Z2"
    rcharge_weights: Optional[Tuple[int, ...]] = None
    qh_weights: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if any(not v for v in self.variables):
            raise ValueError("variable names must be nonempty")
        if self.grading_mode not in ("Z", "Z2"):
            raise ValueError(f"unknown grading mode {self.grading_mode!r}")
        if self.rcharge_weights is not None:
            w = tuple(int(x) for x in self.rcharge_weights)
            if len(w) != self.n:
                raise ValueError("rcharge_weights has wrong length")
            object.__setattr__(self, "rcharge_weights", w)
        if self.grading_mode == "Z":
            if self.rcharge_weights is None:
                raise ValueError("Z grading requires rcharge_weights")
            if any(x % 2 for x in self.rcharge_weights):
                raise ValueError("R-charge weights must be even in Z mode")
        if self.qh_weights is not None:
            q = tuple(Fraction(x) for x in self.qh_weights)
            if len(q) != self.n:
                raise ValueError("qh_weights has wrong length")
            if any(x <= 0 for x in q):
                raise ValueError("qh_weights must be strictly positive")
            object.__setattr__(self, "qh_weights", q)

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.n: Fraction(c)})

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.n
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.var(i) for i in range(self.n))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): Fraction(coeff)})

    def parse(self, text: str) -> "Poly":
        from .parser import parse_poly

        return parse_poly(text, self)

    def with_qh_weights(self, qh) -> "RingSpec":
        return RingSpec(self.variables, self.grading_mode, self.rcharge_weights, qh)


def deglex_key(m: Monomial):
    return (sum(m), m)


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, object] = (), *, _clean=False):
        self.ring = ring
        if _clean:
            self._terms = dict(terms)
        else:
            clean: Dict[Monomial, Fraction] = {}
            n = ring.n
            for m, c in dict(terms).items():
                m = tuple(int(e) for e in m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {n} variables")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    # -- accessors ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list:
        """Terms in descending degree-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ring.n, Fraction(0))

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatch("polynomials live in different rings")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernels.poly_add(self._terms, other._terms, 1), _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernels.poly_add(self._terms, other._terms, -1), _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernels.poly_mul(self._terms, other._terms), _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c for m, v in self._terms.items()}, _clean=True)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitutions -----------------------------------------
    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self.ring.n:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly(self.ring, out, _clean=True)

    def substitute(self, images: Sequence["Poly"], ring: Optional[RingSpec] = None) -> "Poly":
        """Replace variable i by ``images[i]`` (polynomials over ``ring``)."""
        target = ring or (images[0].ring if images else self.ring)
        result = target.zero()
        powers = [dict() for _ in images]
        for m, c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    p = powers[i].get(e)
                    if p is None:
                        p = images[i] ** e
                        powers[i][e] = p
                    term = term * p
            result = result + term
        return result

    def linear_substitute(self, matrix: Sequence[Sequence]) -> "Poly":
        """Pull back along y -> matrix @ y, i.e. y_i -> sum_j matrix[i][j] y_j."""
        g = self.ring.gens()
        imgs = []
        for row in matrix:
            p = self.ring.zero()
            for j, a in enumerate(row):
                if a:
                    p = p + g[j].scale(a)
            imgs.append(p)
        return self.substitute(imgs, self.ring)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self._terms.items() if sum(m) == d}, _clean=True)

    def truncate(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self._terms.items() if sum(m) <= d}, _clean=True)

    # -- printing ----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mon = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.ring.variables, m) if e
            )
            a = abs(c)
            if not mon:
                body = _fmt(a)
            elif a == 1:
                body = mon
            else:
                body = f"{_fmt(a)}*{mon}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt_rational(c) -> str:
    """Exact "p/q" rendering used in reports."""
    return _fmt(Fraction(c))


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def partial(p: Poly, i: int) -> Poly:
    return p.partial(i)


ZERO_MARKER = "zero"
INHOMOGENEOUS = "inhomogeneous"


def weighted_degree(p: Poly, weights: Sequence):
    """Common weighted degree of the terms of p, ``ZERO_MARKER`` or ``INHOMOGENEOUS``."""
    if p.is_zero():
        return ZERO_MARKER
    degs = {sum(w * e for w, e in zip(weights, m)) for m in p._terms}
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()


def rcharge_degree(p: Poly):
    if p.ring.rcharge_weights is None:
        raise ValueError("ring has no R-charge weights")
    return weighted_degree(p, p.ring.rcharge_weights)


def monomials_up_to(n: int, d: int) -> list:
    """All exponent vectors in n variables of total degree <= d, deglex ascending."""
    out = []
    for total in range(d + 1):
        out.extend(_compositions(total, n))
    return out


def _compositions(total: int, n: int):
    if n == 0:
        return [()] if total == 0 else []
    res = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, n - 1):
            res.append((first,) + rest)
    return res


# -- differential forms ------------------------------------------------------

def _merge_sign(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Sign of the shuffle sorting a+b, or 0 if they share an index."""
    if set(a) & set(b):
        return 0
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


class Form:
    """Differential form sum_I f_I dy^I with I strictly increasing."""

    __slots__ = ("ring", "_comps")

    def __init__(self, ring: RingSpec, components: Mapping[Tuple[int, ...], Poly] = ()):
        self.ring = ring
        comps: Dict[Tuple[int, ...], Poly] = {}
        for idx, p in dict(components).items():
            idx = tuple(idx)
            if any(not 0 <= i < ring.n for i in idx):
                raise IndexError(f"form index {idx} out of range")
            if p.ring != ring:
                raise RingMismatch("form coefficient in a different ring")
            order = sorted(range(len(idx)), key=lambda t: idx[t])
            key = tuple(idx[t] for t in order)
            if len(set(key)) != len(key):
                continue
            if _perm_parity(order):
                p = -p
            acc = comps.get(key)
            p = p if acc is None else acc + p
            if p.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = p
        self._comps = comps

    @classmethod
    def scalar(cls, p: Poly) -> "Form":
        return cls(p.ring, {(): p})

    @classmethod
    def basis(cls, ring: RingSpec, idx: Tuple[int, ...], coeff: Optional[Poly] = None) -> "Form":
        return cls(ring, {tuple(idx): coeff if coeff is not None else ring.one()})

    @property
    def components(self) -> Dict[Tuple[int, ...], Poly]:
        return dict(self._comps)

    def is_zero(self):
        return not self._comps

    def degree_part(self, k: int) -> "Form":
        return Form(self.ring, {i: p for i, p in self._comps.items() if len(i) == k})

    def degrees(self):
        return sorted({len(i) for i in self._comps})

    def top_coefficient(self) -> Poly:
        """Coefficient of dy^1..dy^n."""
        return self._comps.get(tuple(range(self.ring.n)), self.ring.zero())

    def __add__(self, other: "Form"):
        if self.ring != other.ring:
            raise RingMismatch("forms in different rings")
        comps = dict(self._comps)
        for i, p in other._comps.items():
            comps[i] = comps[i] + p if i in comps else p
        return Form(self.ring, {i: p for i, p in comps.items() if not p.is_zero()})

    def __neg__(self):
        return Form(self.ring, {i: -p for i, p in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Form":
        if isinstance(c, Poly):
            return Form(self.ring, {i: p * c for i, p in self._comps.items()})
        return Form(self.ring, {i: p.scale(c) for i, p in self._comps.items()})

    def wedge(self, other: "Form") -> "Form":
        if self.ring != other.ring:
            raise RingMismatch("forms in different rings")
        out: Dict[Tuple[int, ...], Poly] = {}
        for i, p in self._comps.items():
            for j, q in other._comps.items():
                s = _merge_sign(i, j)
                if not s:
                    continue
                key = tuple(sorted(i + j))
                term = p * q if s > 0 else -(p * q)
                out[key] = out[key] + term if key in out else term
        return Form(self.ring, {k: v for k, v in out.items() if not v.is_zero()})

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.ring == other.ring and self._comps == other._comps

    def __hash__(self):
        return hash((self.ring, frozenset(self._comps.items())))

    def __str__(self):
        if not self._comps:
            return "0"
        parts = []
        for idx in sorted(self._comps, key=lambda t: (len(t), t)):
            p = self._comps[idx]
            wedge = "^".join("d" + self.ring.variables[i] for i in idx)
            if not wedge:
                parts.append(f"({p})")
            else:
                parts.append(f"({p})*{wedge}")
        return " + ".join(parts)

    __repr__ = __str__


def _perm_parity(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    parity = 0
    for i in range(len(order)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = order[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity


def exterior_d(p: Poly) -> Form:
    return Form(p.ring, {(i,): p.partial(i) for i in range(p.ring.n)})


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def wedge_all(forms: Iterable[Form], ring: RingSpec) -> Form:
    acc = Form.scalar(ring.one())
    for f in forms:
        acc = acc.wedge(f)
    return acc
