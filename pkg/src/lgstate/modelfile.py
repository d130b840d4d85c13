"""Reading versioned JSON model files.

A model file is one JSON document::

    {"format": 1,
     "ring": {"variables": ["x", "y"], "grading": "Z2"},
     "W": "x^2 - y^2",
     "branes": [{"name": "M", "d_od": [["x - y"]], "d_ev": [["x + y"]],
                 "rho": [[[1, 0], [0, 1]], [[1, 0], [0, -1]]]}],
     "morphisms": [{"name": "a", "source": "M", "target": "M", "parity": 1,
                    "blocks": {"ev_od": [["1"]], "od_ev": [["-1"]]}}],
     "group": {"elements": [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]]},
     "tft": {"semisimple": {"E": [2]}}}

Polynomials are strings in the expression grammar; rationals are integers or
"p/q" strings.  Every block except ``format`` and ``ring`` is optional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .factorizations import CurvedAlgebra, MatrixFactorization, Morphism
from .orbifold import CyclotomicAction, GroupAction
from .parser import ParseError
from .poly import Poly, RingSpec
from .tft import FiniteOpenCategory

FORMAT_VERSION = 1


class ModelError(ValueError):
    """Malformed file, unparsable expression or unresolved name."""

    def __init__(self, message: str, path: str = "", line: Optional[int] = None, column: Optional[int] = None):
        self.message, self.path, self.line, self.column = message, path, line, column
        where = f"{path}: " if path else ""
        pos = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{where}{message}{pos}")


@dataclass
class Model:
    ring: RingSpec
    W: Poly
    algebra: CurvedAlgebra
    branes: Dict[str, MatrixFactorization] = field(default_factory=dict)
    rho: Dict[str, list] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)
    group: Optional[GroupAction] = None
    tft: Optional[FiniteOpenCategory] = None
    frobenius: Optional[dict] = None

    def brane(self, name: Optional[str]) -> MatrixFactorization:
        if name is None:
            if not self.branes:
                raise ModelError("model has no branes", "branes")
            return next(iter(self.branes.values()))
        if name not in self.branes:
            raise ModelError(f"unknown brane {name!r}", "branes")
        return self.branes[name]

    def morphism(self, name: str) -> Morphism:
        if name not in self.morphisms:
            raise ModelError(f"unknown morphism {name!r}", "morphisms")
        return self.morphisms[name]


def _rational(x, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ModelError(f"expected an integer or 'p/q' string, got {x!r}", path)
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"bad rational {x!r}", path) from None


def _poly(text, ring: RingSpec, path: str) -> Poly:
    if isinstance(text, int) and not isinstance(text, bool):
        return ring.const(text)
    if not isinstance(text, str):
        raise ModelError(f"expected a polynomial string, got {text!r}", path)
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ModelError(exc.message, path, exc.line, exc.column) from None
    except KeyError as exc:
        raise ModelError(str(exc.args[0]), path) from None


def _list(x, path: str) -> list:
    if not isinstance(x, list):
        raise ModelError("expected a list", path)
    return x


def _matrix(rows, path: str, conv) -> list:
    out = []
    for i, row in enumerate(_list(rows, path)):
        out.append([conv(e, f"{path}[{i}][{j}]") for j, e in enumerate(_list(row, f"{path}[{i}]"))])
    return out


def _ring(block) -> RingSpec:
    if not isinstance(block, dict):
        raise ModelError("expected an object", "ring")
    variables = block.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ModelError("variables must be a list of names", "ring.variables")
    rcharge = block.get("rcharge")
    qh = block.get("qh_weights")
    try:
        return RingSpec(
            tuple(variables),
            block.get("grading", "Z2"),
            None if rcharge is None else [int(_rational(x, "ring.rcharge")) for x in _list(rcharge, "ring.rcharge")],
            None if qh is None else [_rational(x, "ring.qh_weights") for x in _list(qh, "ring.qh_weights")],
        )
    except ValueError as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(str(exc), "ring") from None


def _brane(spec, algebra: CurvedAlgebra, path: str) -> MatrixFactorization:
    ring = algebra.ring
    conv = lambda e, p: _poly(e, ring, p)  # noqa: E731
    d_od = _matrix(spec.get("d_od", []), f"{path}.d_od", conv)
    d_ev = _matrix(spec.get("d_ev", []), f"{path}.d_ev", conv)
    try:
        return MatrixFactorization(algebra, d_od, d_ev, spec.get("rank_ev"), spec.get("rank_od"),
                                   spec.get("internal_degrees"), name=spec["name"])
    except ValueError as exc:
        raise ModelError(str(exc), path) from None


def _morphism(spec, model: Model, path: str) -> Morphism:
    for key in ("source", "target"):
        if spec.get(key) not in model.branes:
            raise ModelError(f"unknown brane {spec.get(key)!r}", f"{path}.{key}")
    M, N = model.branes[spec["source"]], model.branes[spec["target"]]
    parity = spec.get("parity", 0)
    if parity not in (0, 1):
        raise ModelError("parity must be 0 or 1", f"{path}.parity")
    conv = lambda e, p: _poly(e, model.ring, p)  # noqa: E731
    try:
        if "blocks" in spec:
            blocks = {k: _matrix(v, f"{path}.blocks.{k}", conv) for k, v in spec["blocks"].items()}
            return Morphism.from_blocks(M, N, parity, blocks)
        return Morphism(M, N, parity, _matrix(spec.get("matrix"), f"{path}.matrix", conv))
    except (ValueError, IndexError, KeyError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"bad morphism: {exc}", path) from None


def _group(block, n: int) -> GroupAction:
    if not isinstance(block, dict):
        raise ModelError("expected an object", "group")
    conv = _rational
    try:
        if "cyclic" in block:
            c = block["cyclic"]
            weights = c.get("weights", [1] * n)
            if len(weights) != n:
                raise ModelError("weights must match the number of variables", "group.cyclic.weights")
            return CyclotomicAction(int(c["order"]), [int(w) for w in weights])
        if "elements" in block:
            mats = [_matrix(m, f"group.elements[{i}]", conv) for i, m in enumerate(_list(block["elements"], "group.elements"))]
            G = GroupAction(mats)
        elif "generators" in block:
            mats = [_matrix(m, f"group.generators[{i}]", conv)
                    for i, m in enumerate(_list(block["generators"], "group.generators"))]
            G = GroupAction.generated_by(mats)
        else:
            raise ModelError("expected 'elements', 'generators' or 'cyclic'", "group")
    except (KeyError, TypeError) as exc:
        raise ModelError(f"bad group block: {exc}", "group") from None
    except ValueError as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(str(exc), "group") from None
    if any(len(g) != n or any(len(r) != n for r in g) for g in G.elements):
        raise ModelError(f"group matrices must be {n}x{n}", "group")
    return G


def _vec(d, path: str) -> Dict[int, Fraction]:
    if not isinstance(d, dict):
        raise ModelError("expected an object {index: coefficient}", path)
    return {int(k): _rational(v, f"{path}.{k}") for k, v in d.items()}


def _table(rows, path: str) -> Dict:
    out = {}
    for t, row in enumerate(_list(rows, path)):
        if not isinstance(row, list) or len(row) != 3:
            raise ModelError("expected [i, j, {k: c}]", f"{path}[{t}]")
        out[(int(row[0]), int(row[1]))] = _vec(row[2], f"{path}[{t}][2]")
    return out


def _tft(block):
    if not isinstance(block, dict):
        raise ModelError("expected an object", "tft")
    frob = None
    if "frobenius" in block:
        f = block["frobenius"]
        frob = {"product": _table(f.get("product", []), "tft.frobenius.product"),
                "trace": [_rational(x, "tft.frobenius.trace") for x in _list(f.get("trace", []), "tft.frobenius.trace")],
                "unit": _vec(f["unit"], "tft.frobenius.unit") if "unit" in f else None}
    if "semisimple" in block:
        mult = block["semisimple"]
        if not isinstance(mult, dict) or not mult:
            raise ModelError("expected {brane: [multiplicities]}", "tft.semisimple")
        lens = {len(_list(v, f"tft.semisimple.{k}")) for k, v in mult.items()}
        if len(lens) != 1:
            raise ModelError("every brane needs one multiplicity per simple", "tft.semisimple")
        return FiniteOpenCategory.semisimple({k: tuple(int(x) for x in v) for k, v in mult.items()}), frob
    if "algebra" in block:
        a = block["algebra"]
        return FiniteOpenCategory.from_algebra(int(a["dim"]), _table(a.get("table", []), "tft.algebra.table"),
                                               _vec(a.get("unit", {}), "tft.algebra.unit")), frob
    if "branes" in block:
        branes = _list(block["branes"], "tft.branes")
        dims = {(r[0], r[1]): int(r[2]) for r in _list(block.get("hom_dims", []), "tft.hom_dims")}
        comp: Dict = {}
        for t, r in enumerate(_list(block.get("comp", []), "tft.comp")):
            if not isinstance(r, list) or len(r) != 6:
                raise ModelError("expected [E, F, G, i, j, {k: c}]", f"tft.comp[{t}]")
            comp.setdefault((r[0], r[1], r[2]), {})[(int(r[3]), int(r[4]))] = _vec(r[5], f"tft.comp[{t}][5]")
        ids = {E: _vec(v, f"tft.identities.{E}") for E, v in block.get("identities", {}).items()}
        for E in branes:
            if E not in ids:
                raise ModelError(f"missing identity for {E!r}", "tft.identities")
        return FiniteOpenCategory(branes, dims, comp, ids), frob
    raise ModelError("expected 'semisimple', 'algebra' or 'branes'", "tft")


def load_model(text: str) -> Model:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(exc.msg, "", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ModelError("model file must be a JSON object")
    if data.get("format") != FORMAT_VERSION:
        raise ModelError(f"unsupported format {data.get('format')!r}, expected {FORMAT_VERSION}", "format")
    ring = _ring(data.get("ring"))
    W = _poly(data.get("W", "0"), ring, "W")
    try:
        algebra = CurvedAlgebra(ring, W)
    except ValueError as exc:
        raise ModelError(str(exc), "W") from None
    model = Model(ring, W, algebra)

    for i, spec in enumerate(_list(data.get("branes", []), "branes")):
        path = f"branes[{i}]"
        if not isinstance(spec, dict) or not isinstance(spec.get("name"), str):
            raise ModelError("each brane needs a string name", path)
        if spec["name"] in model.branes:
            raise ModelError(f"duplicate brane {spec['name']!r}", path)
        model.branes[spec["name"]] = _brane(spec, algebra, path)
        if "rho" in spec:
            model.rho[spec["name"]] = [_matrix(m, f"{path}.rho[{k}]", _rational)
                                       for k, m in enumerate(_list(spec["rho"], f"{path}.rho"))]

    for i, spec in enumerate(_list(data.get("morphisms", []), "morphisms")):
        path = f"morphisms[{i}]"
        if not isinstance(spec, dict) or not isinstance(spec.get("name"), str):
            raise ModelError("each morphism needs a string name", path)
        model.morphisms[spec["name"]] = _morphism(spec, model, path)

    if data.get("group") is not None:
        model.group = _group(data["group"], ring.n)
    if model.rho and model.group is None:
        raise ModelError("rho matrices given without a group block", "group")
    if data.get("tft") is not None:
        try:
            model.tft, model.frobenius = _tft(data["tft"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ModelError):
                raise
            raise ModelError(f"bad tft block: {exc}", "tft") from None
    return model


def load_model_file(path: str) -> Model:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return load_model(text)


def to_jsonable(x: Any):
    """Deterministic JSON-ready rendering: rationals as "p/q", tuples as lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, dict):
        return {str(to_jsonable(k)) if not isinstance(k, str) else k: to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)
