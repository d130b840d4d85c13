"""lgstate command line: validate | jacobi | chern | kl | gram | spectrum | hochschild | tft."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Callable, Dict, List, Optional

from . import conventions
from .correlators import ResidueError, boundary_bulk, kapustin_li, kl_pairing, nondegeneracy_report, residue_functional
from .factorizations import BraneMismatch, Morphism, hom_diff, morphism_space_basis, validate_mf, zeros
from .groebner import NonIsolatedSingularity, jacobian_basis, milnor_number, quotient_basis
from .hochschild import (CatChain, TensorChain, check_psi_chain_map, hh_truncated_homology, hkr,
                         hochschild_diff, quasi_homogeneous_weights, state_space_homology)
from .modelfile import FORMAT_VERSION, Model, ModelError, load_model_file, to_jsonable
from .orbifold import CyclotomicAction, conjugacy_data, orbifold_spectrum, validate_action, validate_equivariant_mf
from .poly import Form, exterior_d, monomials_up_to
from .tft import (cardy_check, commutator_quotient, frobenius_check, operator_pairing, pairing_checks,
                  validate_category, with_frobenius)

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2


def report_schema() -> dict:
    """The published JSON schema every --json report conforms to."""
    return json.loads(resources.files("lgstate").joinpath("schemas/report.schema.json").read_text("utf-8"))


class CommandFailure(Exception):
    """Computation finished but a checked identity or hypothesis failed."""

    def __init__(self, message: str, result: Optional[dict] = None, failures: Optional[list] = None):
        super().__init__(message)
        self.result, self.failures = result or {}, failures or []


class InputError(Exception):
    pass


def _monomial_str(ring, m) -> str:
    return str(ring.monomial(m))


def _form_by_degree(form: Form) -> Dict[str, List[dict]]:
    out: Dict[str, List[dict]] = {}
    ring = form.ring
    for idx in sorted(form.components, key=lambda t: (len(t), t)):
        coeff = form.components[idx]
        names = [ring.variables[i] for i in idx]
        out.setdefault(str(len(idx)), []).append({"dy": names, "coefficient": str(coeff)})
    return out


def _check_branes(model: Model, names=None) -> None:
    failures = []
    for name, M in model.branes.items():
        if names is not None and name not in names:
            continue
        rep = validate_mf(M)
        for f in rep.failures:
            failures.append(dict(f, brane=name))
    if failures:
        raise CommandFailure("brane validation failed", {"valid": False}, failures)


# -- commands -------------------------------------------------------------------

def cmd_validate(model: Model, args) -> dict:
    failures = []
    branes = []
    for name, M in model.branes.items():
        rep = validate_mf(M)
        branes.append({"name": name, "rank_ev": M.rank_ev, "rank_od": M.rank_od, "valid": rep.ok})
        failures += [dict(f, brane=name) for f in rep.failures]
    morphisms = []
    for name, f in model.morphisms.items():
        morphisms.append({"name": name, "parity": f.parity, "closed": hom_diff(f).is_zero()})
    group = None
    if model.group is not None:
        rep = validate_action(model.group, model.W)
        group = {"order": model.group.order, "valid": rep.ok}
        failures += [dict(f, block="group") for f in rep.failures]
        for name, rho in model.rho.items():
            if not rep.ok:
                break
            r2 = validate_equivariant_mf(model.branes[name], model.group, rho)
            failures += [dict(f, brane=name, block="rho") for f in r2.failures]
            branes[list(model.branes).index(name)]["equivariant"] = r2.ok
    tft = None
    if model.tft is not None:
        rep = validate_category(model.tft)
        tft = {"branes": [str(b) for b in model.tft.branes], "valid": rep.ok}
        failures += [dict(f, block="tft") for f in rep.failures]
    result = {"W": str(model.W), "variables": list(model.ring.variables), "branes": branes,
              "morphisms": morphisms, "group": group, "tft": tft, "valid": not failures}
    if failures:
        raise CommandFailure("validation failed", result, failures)
    return result


def cmd_jacobi(model: Model, args) -> dict:
    W = model.W
    try:
        mu = milnor_number(W)
    except (NonIsolatedSingularity, ValueError) as exc:
        raise CommandFailure(str(exc), {"W": str(W), "isolated": False})
    basis = quotient_basis(jacobian_basis(W)).monomials
    return {"W": str(W), "isolated": True, "mu": mu, "order": "degrevlex",
            "basis": [_monomial_str(model.ring, m) for m in basis]}


def _endomorphism(model: Model, M, name: Optional[str]) -> Morphism:
    if name is None:
        return M.identity()
    f = model.morphism(name)
    if f.source != M or f.target != M:
        raise InputError(f"morphism {name!r} is not an endomorphism of the chosen brane")
    return f


def cmd_chern(model: Model, args) -> dict:
    M = model.brane(args.brane)
    alpha = _endomorphism(model, M, args.morphism)
    _check_branes(model, {M.name})
    tau = boundary_bulk(M, alpha)
    result = {"brane": M.name, "morphism": args.morphism or "id", "degrees": _form_by_degree(tau),
              "top_coefficient": str(tau.top_coefficient()), "disk": None}
    try:
        result["disk"] = to_jsonable(kapustin_li(M, alpha))
    except (ResidueError, NonIsolatedSingularity, ValueError):
        pass
    return result


def cmd_kl(model: Model, args) -> dict:
    alpha = model.morphism(args.alpha)
    _check_branes(model, {alpha.source.name, alpha.target.name})
    try:
        rf = residue_functional(model.W)
    except (ResidueError, NonIsolatedSingularity, ValueError) as exc:
        raise CommandFailure(f"no residue pairing: {exc}")
    if args.beta is None:
        if alpha.source != alpha.target:
            raise InputError("a single morphism must be an endomorphism")
        value = kapustin_li(alpha.source, alpha, rf)
    else:
        beta = model.morphism(args.beta)
        try:
            value = kl_pairing(alpha, beta, rf)
        except BraneMismatch as exc:
            raise InputError(str(exc))
    return {"alpha": args.alpha, "beta": args.beta, "value": to_jsonable(value)}


def cmd_gram(model: Model, args) -> dict:
    _check_branes(model)
    names = list(model.branes)
    try:
        report = nondegeneracy_report(list(model.branes.values()), args.degree)
    except (ResidueError, NonIsolatedSingularity, ValueError) as exc:
        raise CommandFailure(f"no residue pairing: {exc}")
    blocks = []
    for b in report.blocks:
        blocks.append({"source": names[b.source], "target": names[b.target], "classes": len(b.classes),
                       "duals": len(b.duals), "gram": to_jsonable(b.gram), "rank": b.rank,
                       "nondegenerate": b.nondegenerate})
    result = {"degree": args.degree, "blocks": blocks,
              "verdict": "nondegenerate" if report.verdict else "degenerate"}
    if not report.verdict:
        raise CommandFailure("pairing is degenerate on the computed slice", result)
    return result


def cmd_spectrum(model: Model, args) -> dict:
    G = model.group
    if G is None:
        raise InputError("spectrum needs a group block")
    rep = validate_action(G, model.W)
    if not rep.ok:
        raise InputError("invalid group action: " + "; ".join(
            ", ".join(f"{k}={v}" for k, v in f.items()) for f in rep.failures[:3]))
    try:
        spec = orbifold_spectrum(G, model.W)
    except (NonIsolatedSingularity, ValueError) as exc:
        raise CommandFailure(f"non-isolated sector: {exc}")
    sizes = {cls[0]: len(cls) for cls in conjugacy_data(G).classes}
    rows = []
    for s in spec.sectors:
        rows.append({
            "representative": s.g,
            "element": None if isinstance(G, CyclotomicAction) else to_jsonable(G.matrix(s.g)),
            "class_size": sizes[s.g],
            "fixed_dim": s.dim,
            "mu_g": s.mu_g if isinstance(s.mu_g, int) else 1,
            "centralizer_order": len(s.centralizer),
            "invariant_dim": s.invariant_dim,
        })
    return {"group_order": G.order, "sectors": rows, "total": spec.total,
            "by_form_degree": {str(k): v for k, v in sorted(spec.by_form_degree().items())}}


def _random_words(rng: random.Random, ring, count: int, max_factors: int, max_deg: int):
    mons = monomials_up_to(ring.n, max_deg)
    words = []
    for _ in range(count):
        k = rng.randint(1, max_factors)
        words.append(tuple(rng.choice(mons) for _ in range(k)))
    return words


def _hkr_check(model: Model, L: int) -> dict:
    """phi(hochschild_diff c) = -dW ^ phi(c) on sampled words that survive truncation."""
    if L < 1:
        return {"checked": 0, "ok": True}
    rng = random.Random(0)
    dW = exterior_d(model.W)
    bad = 0
    words = _random_words(rng, model.ring, 40, min(L, 4), 2)
    for w in words:
        c = TensorChain(model.algebra, {w: Fraction(1)}, L)
        if hkr(hochschild_diff(c)) != -(dW.wedge(hkr(c))):
            bad += 1
    return {"checked": len(words), "failed": bad, "ok": bad == 0}


def _psi_check(model: Model, L: int) -> Optional[dict]:
    if not model.branes or L < 1:
        return None
    rng = random.Random(0)
    out = []
    for name, M in model.branes.items():
        elems = []
        for parity in (0, 1):
            for (i, j, m) in morphism_space_basis(M, M, parity, 1):
                mat = zeros(M.rank, M.rank, M.ring)
                mat[i][j] = M.ring.monomial(m)
                elems.append(Morphism(M, M, parity, mat))
        checked = failed = 0
        for _ in range(12):
            k = rng.randint(1, min(L, 3))
            word = [rng.choice(elems) for _ in range(k)]
            ok, _ = check_psi_chain_map(CatChain.from_morphisms([M], [(1, word)]), L)
            checked += 1
            failed += not ok
        out.append({"brane": name, "checked": checked, "failed": failed, "ok": failed == 0})
    return {"branes": out, "ok": all(b["ok"] for b in out)}


def cmd_hochschild(model: Model, args) -> dict:
    L, D = args.max_length, args.max_degree
    if L < 0 or D < 0:
        raise InputError("--max-length and --max-degree must be non-negative")
    W, ring = model.W, model.ring
    failures = []
    window = []
    expected_by_t: Optional[Dict] = None
    if not W.is_zero():
        try:
            ss = state_space_homology(W)
            expected_by_t = ss.by_internal_degree(quasi_homogeneous_weights(W))
        except (NonIsolatedSingularity, ValueError) as exc:
            raise CommandFailure(f"cannot compare with the state space: {exc}")
    try:
        table = hh_truncated_homology(W, L, D)
    except ValueError as exc:
        raise CommandFailure(str(exc))
    for row in table.rows:
        if W.is_zero():
            k, deg = row.grading
            expected = comb(ring.n, k) * comb(deg - k + ring.n - 1, ring.n - 1) if deg >= k else 0
            entry = {"grading": f"k={k},deg={deg}", "dim": row.dim, "reliable": row.reliable}
        else:
            expected = expected_by_t.get(row.grading, 0)
            entry = {"grading": to_jsonable(row.grading), "dim": row.dim, "reliable": row.reliable}
        if row.reliable:
            entry["expected"] = expected
            if row.dim != expected:
                failures.append({"check": "window", "grading": entry["grading"], "found": row.dim,
                                 "expected": expected})
        window.append(entry)
    hkr_rep = _hkr_check(model, L)
    if not hkr_rep["ok"]:
        failures.append({"check": "hkr", "failed": hkr_rep["failed"]})
    psi_rep = None
    if model.branes:
        _check_branes(model)
        psi_rep = _psi_check(model, L)
        if psi_rep and not psi_rep["ok"]:
            failures.append({"check": "psi"})
    result = {"W": str(W), "max_length": L, "max_degree": D, "window": window,
              "state_space": None if expected_by_t is None else {
                  "mu": sum(expected_by_t.values()),
                  "by_internal_degree": {to_jsonable(t): d for t, d in sorted(expected_by_t.items())}},
              "hkr": hkr_rep, "psi": psi_rep, "ok": not failures}
    if failures:
        raise CommandFailure("identity failure", result, failures)
    return result


def cmd_tft(model: Model, args) -> dict:
    A = model.tft
    if A is None:
        raise InputError("tft needs a tft block")
    rep = validate_category(A)
    if not rep.ok:
        raise CommandFailure("category axioms fail", {"valid": False}, rep.failures)
    cs = commutator_quotient(A)
    if model.frobenius is not None:
        f = model.frobenius
        cs = with_frobenius(cs, f["product"], f["trace"], f["unit"])
    pr = pairing_checks(cs)
    failures = list(pr.failures)
    result = {"dim_V": cs.dim, "pairing": to_jsonable(cs.pairing), "rank": pr.rank,
              "commutator_vanishing": pr.commutator_vanishing, "symmetric": pr.symmetric,
              "verdict": "nondegenerate" if pr.nondegenerate else "degenerate",
              "identity_pairing": {str(E): to_jsonable(operator_pairing(A, E, A.identities[E], E, A.identities[E]))
                                   for E in A.branes},
              "frobenius": None, "cardy": None}
    if not pr.nondegenerate:
        failures.append({"check": "pairing", "rank": pr.rank, "dim": cs.dim})
    if cs.has_frobenius:
        fr = frobenius_check(cs)
        result["frobenius"] = {"ok": fr.ok}
        failures += fr.failures
        if fr.ok:
            cr = cardy_check(A, cs)
            result["cardy"] = {"ok": cr.ok, "pairs": [{"E": str(E), "F": str(F), "ok": v}
                                                      for (E, F), v in cr.pairs.items()],
                               "adjoint_algebra_map": cr.adjoint_algebra_map}
            failures += [{"check": "cardy", "detail": to_jsonable(x)} for x in cr.failures]
    result["ok"] = not failures
    if failures:
        raise CommandFailure("TFT axiom failure", result, to_jsonable(failures))
    return result


COMMANDS: Dict[str, Callable] = {
    "validate": cmd_validate, "jacobi": cmd_jacobi, "chern": cmd_chern, "kl": cmd_kl, "gram": cmd_gram,
    "spectrum": cmd_spectrum, "hochschild": cmd_hochschild, "tft": cmd_tft,
}


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgstate", description="Exact Landau-Ginzburg B-model computations.")
    p.add_argument("--json", action="store_true", help="emit a machine-readable report")
    p.add_argument("--conventions", action="store_true", help="print the sign conventions and exit")
    sub = p.add_subparsers(dest="command")
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("model", help="JSON model file")
        # also accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a machine-readable report")
        if name == "chern":
            sp.add_argument("--brane")
            sp.add_argument("--morphism")
        elif name == "kl":
            sp.add_argument("--alpha", required=True)
            sp.add_argument("--beta")
        elif name == "gram":
            sp.add_argument("--degree", type=int, default=4)
        elif name == "hochschild":
            sp.add_argument("--max-length", type=int, default=4)
            sp.add_argument("--max-degree", type=int, default=8)
    return p


def _report(command: str, code: int, result, failures, error) -> dict:
    status = {EXIT_OK: "ok", EXIT_FAILURE: "failure", EXIT_INPUT: "error"}[code]
    return {"format": FORMAT_VERSION, "command": command, "conventions": conventions.CONVENTIONS_ID,
            "status": status, "exit_code": code, "result": to_jsonable(result),
            "failures": to_jsonable(failures), "error": error}


def _print_human(rep: dict, out) -> None:
    if rep["error"]:
        e = rep["error"]
        where = f"{e['path']}: " if e.get("path") else ""
        pos = f" at line {e['line']}, column {e['column']}" if e.get("line") is not None else ""
        print(f"error: {where}{e['message']}{pos}", file=out)
        return
    _print_value(rep["result"], out, 0)
    for f in rep["failures"]:
        print("FAIL " + ", ".join(f"{k}={v}" for k, v in sorted(f.items())), file=out)
    print(rep["status"].upper(), file=out)


def _print_value(v, out, indent: int) -> None:
    pad = "  " * indent
    if isinstance(v, dict):
        for k, x in v.items():
            if isinstance(x, (dict, list)) and x and not _flat(x):
                print(f"{pad}{k}:", file=out)
                _print_value(x, out, indent + 1)
            else:
                print(f"{pad}{k}: {_inline(x)}", file=out)
    elif isinstance(v, list):
        for x in v:
            if isinstance(x, dict):
                print(f"{pad}- " + ", ".join(f"{k}={_inline(y)}" for k, y in x.items()), file=out)
            else:
                print(f"{pad}- {_inline(x)}", file=out)


def _flat(x) -> bool:
    return isinstance(x, list) and all(not isinstance(e, (dict, list)) for e in x)


def _inline(x) -> str:
    if isinstance(x, list):
        return "[" + ", ".join(_inline(e) for e in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_inline(e)}" for k, e in x.items()) + "}"
    return "-" if x is None else str(x)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.conventions:
        out.write(conventions.TEXT)
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    result, failures, error = None, [], None
    try:
        model = load_model_file(args.model)
        result = COMMANDS[args.command](model, args)
        code = EXIT_OK
    except ModelError as exc:
        code = EXIT_INPUT
        error = {"message": exc.message, "path": exc.path, "line": exc.line, "column": exc.column}
    except InputError as exc:
        code = EXIT_INPUT
        error = {"message": str(exc), "path": "", "line": None, "column": None}
    except CommandFailure as exc:
        code = EXIT_FAILURE
        result, failures = exc.result, exc.failures
        failures = failures or [{"check": args.command, "detail": str(exc)}]
    rep = _report(args.command, code, result, failures, error)
    if args.json:
        out.write(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    else:
        _print_human(rep, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
