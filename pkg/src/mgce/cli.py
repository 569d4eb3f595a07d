"""Command line front end: ``mgce <command> [flags] <manifest>``.

Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 the weight window is not
faithful and ``--allow-truncated`` was not given.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import ce as ce_mod
from .complex import homology
from .lie import validate_lie, validate_rep
from .linalg import rank
from .manifest import FIXTURES, Manifest, ManifestError, load_fixture, parse_manifest
from .mixed import tate_total, validate_mixed

COMMANDS = ("validate", "ce", "betti", "tate", "duality", "monoidality", "check-paper-example")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_TRUNCATED = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, str) else k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def load_manifest(where: str) -> tuple[Manifest, str]:
    p = Path(where)
    if p.exists():
        return parse_manifest(p.read_text(encoding="utf-8")), str(p)
    if where in FIXTURES:
        return load_fixture(where), f"fixture:{where}"
    raise InputError(f"no such manifest file or bundled fixture: {where}")


def parse_degrees(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise InputError(f"--degrees expects a..b, got {text!r}") from None
    if not sep or a > b:
        raise InputError(f"--degrees expects a..b with a <= b, got {text!r}")
    return a, b


def _dims(module) -> dict:
    return {p: dict(sorted(row.items())) for p, row in sorted(module.dims_table().items())}


def _eps_ranks(module) -> dict:
    out: dict = {}
    for p, n in module.cells():
        r = rank(module.eps(p, n))
        if r:
            out.setdefault(p, {})[n] = r
    return out


def _violation(v) -> Any:
    return "ok" if v is None else {"kind": v.kind, "where": [str(w) for w in v.where], "detail": v.detail}


def _ok(checks: dict) -> bool:
    return all(v == "ok" or v is True for v in checks.values())


def run(command: str, manifest: Manifest | None, *, source: str = "", max_weight: int | None = None,
        pbw_degree: int | None = None, degrees: tuple[int, int] | None = None, coeff: str | None = None,
        side: str = "cohom", allow_truncated: bool = False, other: Manifest | None = None) -> tuple[dict, int]:
    """Run one command and return ``(report, exit code)``."""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    tables: dict = {}
    checks: dict = {}
    warns: list[str] = []
    code = EXIT_OK

    if command == "check-paper-example":
        D = 3 if pbw_degree is None else pbw_degree
        r = ce_mod.aff1_example_check(D=D, P=2)
        tables["eps_u_e1e2"] = {
            "".join(row["u"]) or "1": {
                "expected": {f"{''.join('e%d' % (i + 1) for i in u) or '1'}|{'e%dbar' % (S[0] + 1)}": c
                             for (u, S), c in sorted(row["expected"].items())},
                "actual": {f"{''.join('e%d' % (i + 1) for i in u) or '1'}|{'e%dbar' % (S[0] + 1)}": c
                           for (u, S), c in sorted(row["actual"].items())},
            } for row in r["rows"]}
        tables["ce_eps_weight2"] = r["ce_eps2"]
        checks["enveloping_cone_eps"] = all(row["ok"] for row in r["rows"])
        checks["ce_weight2_eps"] = r["ce_ok"]
        params = {"pbw_degree": D, "max_weight": 2}
        report = {"input": {"command": command, "manifest": "aff1 (built in)"}, "params": params,
                  "tables": tables, "checks": checks, "warnings": warns}
        return _jsonable(report), EXIT_OK if r["ok"] else EXIT_VIOLATION

    if manifest is None:
        raise InputError(f"{command} needs a manifest")
    g = manifest.lie()
    P = max_weight if max_weight is not None else manifest.requests.get("maxweight", g.dim)
    D = pbw_degree if pbw_degree is not None else g.dim + 2
    if degrees is None and "degrees" in manifest.requests:
        degrees = tuple(manifest.requests["degrees"])
    params = {"max_weight": P, "pbw_degree": D, "side": side, "coeff": coeff,
              "degrees": list(degrees) if degrees else None, "allow_truncated": allow_truncated}
    if side not in ("hom", "cohom"):
        raise InputError("--side must be hom or cohom")
    if coeff is not None and side == "hom":
        raise InputError("--coeff is only available with --side cohom")

    lie_v = validate_lie(g)
    checks["lie"] = _violation(lie_v)
    rep = None
    if command == "validate":
        for rname in manifest.representations:
            checks[f"rep:{rname}"] = _violation(validate_rep(g, manifest.representation(rname)))
    if coeff is not None:
        rep = manifest.representation(coeff)
        rv = validate_rep(g, rep)
        checks[f"rep:{coeff}"] = _violation(rv)
        if rv is not None:
            lie_v = lie_v or rv
    if command == "validate" or lie_v is not None:
        code = EXIT_OK if _ok(checks) else EXIT_VIOLATION
        return _jsonable(_report(command, source, manifest, params, tables, checks, warns)), code

    faithful = ce_mod.window_faithful(g, P)
    if command in ("betti", "tate") and not faithful:
        warns.append(f"weights above {P} are truncated and Sym(g[-1]) does not vanish there")

    if command == "ce":
        if side == "hom":
            ho = ce_mod.ce_homological(g, P)
            mod = ho.module
            checks["coderivation"] = not ce_mod.coderivation_failures(ho)
            checks["coalgebra"] = not ce_mod.coalgebra_failures(ho)
        elif rep is None:
            co = ce_mod.ce_cohomological(g, P)
            mod = co.module
            checks["derivation"] = not ce_mod.derivation_failures(co)
        else:
            mod = ce_mod.ce_coefficients(g, rep, P)
        checks["mixed"] = _violation(validate_mixed(mod))
        tables["dims"] = _dims(mod)
        tables["eps_rank"] = _eps_ranks(mod)
    elif command == "betti":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ce_mod.WindowUnfaithful)
            rep_ = ce_mod.betti(g, side, rep, P, degrees)
        tables["betti"] = rep_.betti
    elif command == "tate":
        if side == "hom":
            mod, floor = ce_mod.ce_homological(g, P).module, -P
        else:
            mod = ce_mod.ce_cohomological(g, P).module if rep is None else ce_mod.ce_coefficients(g, rep, P)
            floor = 0
        tot = tate_total(mod, floor)
        h = homology(tot)
        lo_hi = degrees
        tables["total_dims"] = {n: tot.dim(n) for n in sorted(tot.dims)
                                if lo_hi is None or lo_hi[0] <= n <= lo_hi[1]}
        tables["homology"] = {n: h.get(n, 0) for n in sorted(tot.dims)
                              if lo_hi is None or lo_hi[0] <= n <= lo_hi[1]}
        params["weight_floor"] = floor
    elif command == "duality":
        res = ce_mod.duality_check(g, P)
        checks["duality"] = res.ok
        if not res.ok:
            tables["mismatches"] = [str(m) for m in res.mismatches[:20]]
    elif command == "monoidality":
        h = (other or manifest).lie()
        hv = validate_lie(h)
        checks["other_lie"] = _violation(hv)
        if hv is None:
            res = ce_mod.monoidality_check(g, h, P)
            checks["monoidality"] = res.ok
            if not res.ok:
                tables["mismatches"] = [str(m) for m in res.mismatches[:20]]
        params["other"] = h.name

    if not _ok(checks):
        code = EXIT_VIOLATION
    elif command in ("betti", "tate") and not faithful and not allow_truncated:
        code = EXIT_TRUNCATED
    return _jsonable(_report(command, source, manifest, params, tables, checks, warns)), code


def _report(command, source, manifest, params, tables, checks, warns) -> dict:
    return {"input": {"command": command, "manifest": source, "name": manifest.name},
            "params": params, "tables": tables, "checks": checks, "warnings": warns}


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _rows(prefix: list, x):
    if isinstance(x, dict):
        for k in x:
            yield from _rows(prefix + [str(k)], x[k])
    elif isinstance(x, list) and x and isinstance(x[0], list):
        for i, row in enumerate(x):
            yield from _rows(prefix + [str(i)], row)
    else:
        yield prefix + [json.dumps(x) if isinstance(x, list) else str(x)]


def render_tsv(report: dict) -> str:
    lines = []
    for name in sorted(report["tables"]):
        lines.append(f"# {name}")
        lines.extend("\t".join(r) for r in _rows([], report["tables"][name]))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mgce", description="Mixed graded Chevalley-Eilenberg computations")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("manifest", nargs="?", help="manifest path or bundled fixture name")
    ap.add_argument("--max-weight", type=int)
    ap.add_argument("--pbw-degree", type=int)
    ap.add_argument("--degrees", metavar="A..B")
    ap.add_argument("--coeff", metavar="NAME")
    ap.add_argument("--side", choices=("hom", "cohom"), default="cohom")
    ap.add_argument("--out", choices=("json", "tsv"), default="json")
    ap.add_argument("--allow-truncated", action="store_true")
    ap.add_argument("--other", metavar="MANIFEST", help="second factor for monoidality")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        man, src = (None, "")
        if args.manifest is not None:
            man, src = load_manifest(args.manifest)
        other = load_manifest(args.other)[0] if args.other else None
        report, code = run(args.command, man, source=src, max_weight=args.max_weight,
                           pbw_degree=args.pbw_degree, degrees=parse_degrees(args.degrees),
                           coeff=args.coeff, side=args.side, allow_truncated=args.allow_truncated,
                           other=other)
    except (InputError, ManifestError, ce_mod.RepInvalid, OSError) as e:
        print(f"mgce: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render_json(report) if args.out == "json" else render_tsv(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
