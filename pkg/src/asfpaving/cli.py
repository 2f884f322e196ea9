"""Command-line front end.

    asfpaving paving     --config problem.json [--radius N] [--no-auto-extend] [--quotient-central]
    asfpaving hessenberg --config spec.json
    asfpaving torus      --config problem.json
    asfpaving oracle     --config oracle.json [--q Q]

Configs are JSON; every rational is written as a string "p/q".  Reports go
to standard output as a single JSON document, diagnostics to standard error.
Exit codes: 0 success, 2 validation failure, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .coinvariant import EngineError
from .hessenberg import (
    HessenbergError,
    HessenbergSpec,
    NegativeRankError,
    ambient_dim,
    codim_condition,
    emptiness,
    hessenberg_dim,
)
from .oracle import OracleError, compare_with_paving, run_oracle
from .paving import Enumeration, PavingError, PavingProblem, PavingReport, run_paving
from .repweights import NEG_INF, WeightedRep, adjoint_rep, mod_Z_piece, standard_rep
from .rootdata import RootDatum, RootDatumError, alcove_position, as_fraction, build_root_datum
from .torus import TorusError, build_torus, equivalued_admissible

log = logging.getLogger("asfpaving")


class ConfigError(ValueError):
    pass


VALIDATION_ERRORS = (ConfigError, RootDatumError, TorusError, PavingError, HessenbergError, OracleError)
INTERNAL_ERRORS = (NegativeRankError, EngineError, AssertionError)


# ---------------------------------------------------------------------------
# Serialization

def fmt(value) -> str:
    return str(Fraction(value))


def fmt_point(p) -> list[str]:
    return [fmt(c) for c in p]


def poly_text(coeffs) -> str:
    if coeffs is None:
        return ""
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def _datum_json(datum: RootDatum) -> dict:
    return {
        "label": datum.label(),
        "isogeny": datum.isogeny,
        "components": [[f, k] for f, k in datum.components],
        "roots": [list(a) for a in datum.roots],
    }


def problem_json(problem: PavingProblem, torus_mode: str) -> dict:
    d = problem.datum
    return {
        "family": d.family,
        "rank": d.rank,
        "isogeny": d.isogeny,
        "rep": problem.rep.name,
        "torus": torus_mode,
        "x": fmt_point(problem.x),
        "s": fmt(problem.s),
        "y": fmt_point(problem.y),
        "t": fmt(problem.t),
        "v_support": [list(w) for w in problem.v_support],
        "radius": problem.enumeration.radius,
        "auto_extend": problem.enumeration.auto_extend,
        "quotient_by_central": problem.enumeration.quotient_by_central,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return fmt(obj)
    return obj


def report_json(problem: PavingProblem, report: PavingReport, torus_mode: str) -> dict:
    cells = []
    for c in report.cells:
        cell: dict[str, Any] = {
            "orbit": {"translation": list(c.orbit.translation), "word": list(c.orbit.finite.word)},
            "y_prime": fmt_point(c.y_prime),
            "empty": c.empty,
            "base_dim": c.base_dim,
            "layers": [{"r": fmt(r), "rank": k} for r, k in c.layer_ranks],
            "dim": c.dim_total,
        }
        if c.dim_rootcount is not None:
            cell["dim_rootcount"] = c.dim_rootcount
        cells.append(cell)
    return {
        "kind": "paving",
        "provenance": "paving",
        "version": __version__,
        "problem": problem_json(problem, torus_mode),
        "cells": cells,
        "affine_paving": report.affine_paving,
        "max_dim": report.max_dim,
        "poly": list(report.point_count_poly) if report.point_count_poly is not None else None,
        "poly_text": poly_text(report.point_count_poly),
        "truncation": _jsonable(report.truncation_note),
    }


# ---------------------------------------------------------------------------
# Config parsing

def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"missing config key {key!r}")
    return cfg[key]


def _rational(value, key: str) -> Fraction:
    if isinstance(value, float):
        raise ConfigError(f"{key}: floats are not accepted; write rationals as \"p/q\" strings")
    try:
        return as_fraction(value)
    except RootDatumError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _point(value, key: str, n: int) -> tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"{key}: expected a list of rationals")
    if len(value) != n:
        raise ConfigError(f"{key}: expected {n} coordinates, got {len(value)}")
    return tuple(_rational(v, key) for v in value)


def _int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer")
    return value


def _weights(value, key: str, n: int) -> list[tuple[int, ...]]:
    if not isinstance(value, list):
        raise ConfigError(f"{key}: expected a list of integer weights")
    out = []
    for w in value:
        if not isinstance(w, list) or len(w) != n:
            raise ConfigError(f"{key}: each weight needs {n} integer coordinates")
        out.append(tuple(_int(c, key) for c in w))
    return out


def datum_from_config(cfg: dict) -> RootDatum:
    family = _require(cfg, "family")
    rank = _int(_require(cfg, "rank"), "rank")
    isogeny = cfg.get("isogeny", "simply_connected")
    return build_root_datum(family, rank, isogeny)


def rep_from_config(cfg: dict, datum: RootDatum) -> WeightedRep:
    rep = cfg.get("rep", "adjoint")
    if rep == "adjoint":
        return adjoint_rep(datum)
    if rep == "standard":
        return standard_rep(datum)
    if isinstance(rep, dict) and "weights" in rep:
        n = datum.lattice_rank
        entries = rep["weights"]
        weights = []
        for e in entries:
            if isinstance(e, dict):
                mult = _int(e.get("mult", 1), "rep.mult")
                weights.extend([tuple(_weights([e["weight"]], "rep.weight", n)[0])] * mult)
            else:
                weights.extend(_weights([e], "rep.weights", n))
        if not weights:
            raise ConfigError("rep: representation must have positive dimension")
        return WeightedRep.from_weights(weights, rep.get("name", "custom"))
    raise ConfigError("rep: expected 'adjoint', 'standard' or {\"weights\": [...]}")


def torus_from_config(cfg: dict, datum: RootDatum):
    torus = cfg.get("torus", {"mode": "coxeter"})
    if isinstance(torus, str):
        torus = {"mode": torus}
    mode = torus.get("mode", "coxeter")
    if mode == "kac":
        x = _point(_require(torus, "x"), "torus.x", datum.lattice_rank)
        order = _int(_require(torus, "order"), "torus.order")
        return build_torus(datum, "kac", x=x, order=order)
    if mode == "weakly_coxeter":
        levi = torus.get("levi", [])
        if not isinstance(levi, list):
            raise ConfigError("torus.levi: expected a list of simple root indices")
        return build_torus(datum, "weakly_coxeter", levi_selection=[_int(i, "torus.levi") for i in levi])
    if mode == "coxeter":
        return build_torus(datum, "coxeter")
    raise ConfigError(f"torus.mode: unknown mode {mode!r}")


def _y_from_config(cfg: dict, datum: RootDatum) -> tuple[Fraction, ...]:
    y = cfg.get("y", "origin")
    if y == "origin":
        return tuple([Fraction(0)] * datum.lattice_rank)
    if y == "barycenter":
        h = datum.coxeter_number
        return tuple(c / h for c in datum.rho_check)
    return _point(y, "y", datum.lattice_rank)


def problem_from_config(cfg: dict, args) -> tuple[PavingProblem, str]:
    datum = datum_from_config(cfg)
    rep = rep_from_config(cfg, datum)
    torus = torus_from_config(cfg, datum)
    s = _rational(_require(cfg, "s"), "s")
    t = _rational(cfg.get("t", "0"), "t")
    if t > s:
        raise ConfigError("hypothesis s ≥ t violated")
    adm = equivalued_admissible(datum, torus.x, s, rep, torus.order)
    if not adm.ok:
        raise ConfigError(f"equivalued admissibility: {adm.reason}")
    enum_cfg = cfg.get("enumeration", {})
    radius = enum_cfg.get("radius", 3) if getattr(args, "radius", None) is None else args.radius
    auto = bool(enum_cfg.get("auto_extend", True)) and not getattr(args, "no_auto_extend", False)
    central = bool(enum_cfg.get("quotient_by_central", False)) or getattr(args, "quotient_central", False)
    support = cfg.get("v_support")
    if support is not None:
        support = _weights(support, "v_support", datum.lattice_rank)
    problem = PavingProblem(
        datum=datum,
        rep=rep,
        x=torus.x,
        s=s,
        y=_y_from_config(cfg, datum),
        t=t,
        v_support=support,
        enumeration=Enumeration(_int(radius, "radius"), auto, central),
    )
    return problem, torus.mode


# ---------------------------------------------------------------------------
# Commands

def cmd_paving(cfg: dict, args) -> dict:
    problem, mode = problem_from_config(cfg, args)
    report = run_paving(problem)
    return report_json(problem, report, mode)


def cmd_hessenberg(cfg: dict, args) -> dict:
    datum = datum_from_config(cfg)
    rep = rep_from_config(cfg, datum)
    n = datum.lattice_rank
    if "torus" in cfg:
        x = torus_from_config(cfg, datum).x
    else:
        x = _point(cfg.get("x", ["0"] * n), "x", n)
    from .torus import levi_at
    h = levi_at(datum, x)
    residue = _rational(cfg.get("s", "0"), "s")
    piece = mod_Z_piece(x, residue, rep)
    t_raw = cfg.get("t", "0")
    t = NEG_INF if t_raw == "-inf" else _rational(t_raw, "t")
    point = _point(_require(cfg, "parabolic_point"), "parabolic_point", n)
    support = cfg.get("v_support")
    support = tuple(w for w, _, _ in piece.entries) if support is None else tuple(_weights(support, "v_support", n))
    spec = HessenbergSpec(h, point, t, piece, support)
    verdict = emptiness(spec)
    out = {
        "kind": "hessenberg",
        "provenance": "hessenberg",
        "version": __version__,
        "h": _datum_json(h),
        "parabolic_point": fmt_point(point),
        "t": "-inf" if t is NEG_INF else fmt(t),
        "ambient_dim": ambient_dim(spec),
        "m": codim_condition(spec),
        "empty": verdict.empty,
        "method": verdict.method,
        "chern_empty": verdict.chern_empty,
        "support_empty": verdict.support_empty,
        "dim": None if verdict.empty else hessenberg_dim(spec),
    }
    out["summary"] = "empty" if verdict.empty else f"nonempty, dim = {out['dim']}"
    return out


def cmd_torus(cfg: dict, args) -> dict:
    datum = datum_from_config(cfg)
    torus = torus_from_config(cfg, datum)
    pos = alcove_position(datum, torus.x)
    out = {
        "kind": "torus",
        "provenance": "torus",
        "version": __version__,
        "mode": torus.mode,
        "x": fmt_point(torus.x),
        "order": torus.order,
        "h": _datum_json(torus.h_datum),
        "alcove": "interior" if pos.interior else "on_wall",
        "walls": [{"gradient": list(a.gradient), "level": a.level} for a in pos.walls],
    }
    if "s" in cfg:
        rep = rep_from_config(cfg, datum)
        adm = equivalued_admissible(datum, torus.x, _rational(cfg["s"], "s"), rep, torus.order)
        out["admissible"] = {
            "ok": adm.ok,
            "reason": adm.reason,
            "regular": adm.regular,
            "piece": [list(w) for w, _, _ in adm.piece.entries] if adm.piece else [],
        }
    return out


def cmd_oracle(cfg: dict, args) -> dict:
    n = _int(_require(cfg, "n"), "n")
    m = _int(_require(cfg, "m"), "m")
    if n < 1 or n > 3:
        raise OracleError("oracle limit: n must be at most 3")
    q = args.q if getattr(args, "q", None) is not None else _int(cfg.get("q", 2), "q")
    datum = build_root_datum("A", n - 1, "gl") if n > 1 else None
    if datum is None:
        raise OracleError("oracle needs n >= 2")
    torus = build_torus(datum, "coxeter")
    enum_cfg = cfg.get("enumeration", {})
    radius = enum_cfg.get("radius", 0) if getattr(args, "radius", None) is None else args.radius
    problem = PavingProblem(
        datum, adjoint_rep(datum), torus.x, Fraction(m, n), tuple([Fraction(0)] * n), Fraction(0),
        enumeration=Enumeration(_int(radius, "radius"),
                                not getattr(args, "no_auto_extend", False) and enum_cfg.get("auto_extend", True),
                                True),
    )
    report = run_paving(problem)
    window = cfg.get("window")
    if window is None:
        window = max([1] + [max(abs(int(v)) for v in c.y_prime) for c in report.nonempty()])
    window = _int(window, "window")
    N = cfg.get("N")
    variant = cfg.get("variant", "graded")
    result = run_oracle(n, m, q, window, N=None if N is None else _int(N, "N"), variant=variant,
                        positions=variant == "graded")
    verdict = compare_with_paving(result, report, problem)
    return {
        "kind": "oracle",
        "provenance": "oracle",
        "version": __version__,
        "n": n,
        "m": m,
        "q": q,
        "N": result.N,
        "window": window,
        "variant": variant,
        "total": result.total,
        "positions": [{"position": list(p), "count": c} for p, c in result.positions.items()],
        "paving_poly": list(report.point_count_poly),
        "paving_total": report.evaluate(q),
        "verdict": verdict.status,
        "per_orbit": _jsonable(verdict.per_orbit),
        "offending": [list(p) for p in verdict.offending],
    }


COMMANDS = {
    "paving": cmd_paving,
    "hessenberg": cmd_hessenberg,
    "torus": cmd_torus,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to a JSON problem config")
    common.add_argument("--radius", type=int, default=None, help="translation radius for orbit enumeration")
    common.add_argument("--no-auto-extend", action="store_true", help="do not grow the window to the polytope bound")
    common.add_argument("--quotient-central", action="store_true", help="enumerate modulo central translations (gl)")
    common.add_argument("--q", type=int, default=None, help="field size for the oracle")
    common.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to standard error")
    parser = argparse.ArgumentParser(prog="asfpaving", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("paving", parents=[common], help="cell enumeration and point-count polynomial")
    sub.add_parser("hessenberg", parents=[common], help="emptiness and dimension of one Hessenberg variety")
    sub.add_parser("torus", parents=[common], help="grading point x, the group H, alcove status")
    sub.add_parser("oracle", parents=[common], help="finite-field lattice count and comparison (GL(n))")
    return parser


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _error(code: str, message: str, status: int) -> int:
    _emit({"error": {"code": code, "message": message}})
    print(f"asfpaving: {code}: {message}", file=sys.stderr)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh, parse_float=_reject_float)
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        result = COMMANDS[args.command](cfg, args)
    except OSError as exc:
        return _error("validation", f"cannot read config: {exc}", 2)
    except json.JSONDecodeError as exc:
        return _error("validation", f"invalid JSON: {exc}", 2)
    except INTERNAL_ERRORS as exc:
        return _error("internal", str(exc) or type(exc).__name__, 3)
    except VALIDATION_ERRORS as exc:
        return _error("validation", str(exc), 2)
    _emit(result)
    return 0


def _reject_float(text: str):
    raise ConfigError(f"floats are not accepted ({text}); write rationals as \"p/q\" strings")


if __name__ == "__main__":
    sys.exit(main())
