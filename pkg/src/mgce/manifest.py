"""JSON manifests describing a dg Lie algebra, its representations and default windows.

Scalars are integers or rational strings such as ``"1/3"``; floats are refused.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from .lie import DgLieAlgebra, Representation, make_lie

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class ManifestError(ValueError):
    pass


class ParseError(ManifestError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(msg + where)
        self.line, self.col = line, col


class UnknownName(ManifestError):
    def __init__(self, name: str, where: str):
        super().__init__(f"unknown name {name!r} in {where}")
        self.name, self.where = name, where


class DuplicateName(ManifestError):
    def __init__(self, name: str, where: str):
        super().__init__(f"duplicate name {name!r} in {where}")
        self.name, self.where = name, where


class BadRational(ManifestError):
    def __init__(self, text, where: str):
        super().__init__(f"not an exact rational: {text!r} in {where}")
        self.text, self.where = text, where


Vector = dict[str, Fraction]


@dataclass
class RepSpec:
    basis: list[tuple[str, int]]
    differential: dict[str, Vector] = field(default_factory=dict)
    action: dict[tuple[str, str], Vector] = field(default_factory=dict)


@dataclass
class Manifest:
    name: str
    generators: list[tuple[str, int]]
    differential: dict[str, Vector] = field(default_factory=dict)
    bracket: dict[tuple[str, str], Vector] = field(default_factory=dict)
    representations: dict[str, RepSpec] = field(default_factory=dict)
    requests: dict[str, Any] = field(default_factory=dict)

    def lie(self) -> DgLieAlgebra:
        return make_lie(self.generators, self.bracket, self.differential, name=self.name)

    def representation(self, name: str) -> Representation:
        if name not in self.representations:
            raise UnknownName(name, "representations")
        spec = self.representations[name]
        gidx = {g: i for i, (g, _) in enumerate(self.generators)}
        vidx = {v: i for i, (v, _) in enumerate(spec.basis)}
        diff = {vidx[v]: {vidx[k]: c for k, c in img.items()} for v, img in spec.differential.items()}
        act = {(gidx[x], vidx[v]): {vidx[k]: c for k, c in img.items()}
               for (x, v), img in spec.action.items()}
        return Representation(tuple(v for v, _ in spec.basis), tuple(d for _, d in spec.basis),
                              diff, act, name)


# --------------------------------------------------------------------------
# parsing

def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise BadRational(x, where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.fullmatch(x.strip()):
        num, _, den = x.strip().partition("/")
        if den and int(den) == 0:
            raise BadRational(x, where)
        return Fraction(int(num), int(den) if den else 1)
    raise BadRational(x, where)


def _obj(x, where: str, keys: set[str]) -> dict:
    if not isinstance(x, dict):
        raise ParseError(f"expected an object in {where}, found {type(x).__name__}")
    missing = keys - set(x)
    if missing:
        raise ParseError(f"missing key {sorted(missing)[0]!r} in {where}")
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"expected a list in {where}, found {type(x).__name__}")
    return x


def _vector(x, names: set[str], where: str) -> Vector:
    if not isinstance(x, dict):
        raise ParseError(f"expected a name -> rational map in {where}")
    out = {}
    for k, v in x.items():
        if k not in names:
            raise UnknownName(k, where)
        c = _rational(v, f"{where}.{k}")
        if c:
            out[k] = c
    return out


def _basis(x, where: str) -> list[tuple[str, int]]:
    out, seen = [], set()
    for k, g in enumerate(_list(x, where)):
        w = f"{where}[{k}]"
        g = _obj(g, w, {"name", "degree"})
        name, deg = g["name"], g["degree"]
        if not isinstance(name, str) or not name:
            raise ParseError(f"generator name must be a non-empty string in {w}")
        if isinstance(deg, bool) or not isinstance(deg, int):
            raise ParseError(f"degree must be an integer in {w}")
        if name in seen:
            raise DuplicateName(name, w)
        seen.add(name)
        out.append((name, deg))
    return out


def _differential(x, names: set[str], where: str) -> dict[str, Vector]:
    out: dict[str, Vector] = {}
    for k, e in enumerate(_list(x, where)):
        w = f"{where}[{k}]"
        e = _obj(e, w, {"src", "image"})
        if e["src"] not in names:
            raise UnknownName(e["src"], w)
        if e["src"] in out:
            raise DuplicateName(e["src"], w)
        out[e["src"]] = _vector(e["image"], names, w + ".image")
    return out


def _reject_float(s: str):
    raise BadRational(s, "document")


def parse_manifest(text: str) -> Manifest:
    try:
        raw = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    raw = _obj(raw, "manifest", {"generators"})
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    gens = _basis(raw["generators"], "generators")
    gnames = {g for g, _ in gens}
    diff = _differential(raw.get("differential", []), gnames, "differential")
    bracket: dict[tuple[str, str], Vector] = {}
    for k, e in enumerate(_list(raw.get("bracket", []), "bracket")):
        w = f"bracket[{k}]"
        e = _obj(e, w, {"left", "right", "value"})
        for side in ("left", "right"):
            if e[side] not in gnames:
                raise UnknownName(e[side], w)
        key = (e["left"], e["right"])
        if key in bracket:
            raise DuplicateName(f"[{key[0]},{key[1]}]", w)
        bracket[key] = _vector(e["value"], gnames, w + ".value")
    reps = {}
    rraw = raw.get("representations", {})
    if not isinstance(rraw, dict):
        raise ParseError("representations must be an object")
    for rname, r in rraw.items():
        w = f"representations.{rname}"
        r = _obj(r, w, {"basis"})
        basis = _basis(r["basis"], w + ".basis")
        vnames = {v for v, _ in basis}
        rdiff = _differential(r.get("differential", []), vnames, w + ".differential")
        act = {}
        for k, e in enumerate(_list(r.get("action", []), w + ".action")):
            we = f"{w}.action[{k}]"
            e = _obj(e, we, {"gen", "vector", "value"})
            if e["gen"] not in gnames:
                raise UnknownName(e["gen"], we)
            if e["vector"] not in vnames:
                raise UnknownName(e["vector"], we)
            key = (e["gen"], e["vector"])
            if key in act:
                raise DuplicateName(f"{key[0]}.{key[1]}", we)
            act[key] = _vector(e["value"], vnames, we + ".value")
        reps[rname] = RepSpec(basis, rdiff, act)
    req = raw.get("requests", {})
    if not isinstance(req, dict):
        raise ParseError("requests must be an object")
    return Manifest(name, gens, diff, bracket, reps, dict(req))


# --------------------------------------------------------------------------
# serialization

def _vec_json(v: Vector) -> dict[str, str]:
    return {k: str(c) for k, c in v.items()}


def manifest_to_json(m: Manifest) -> dict:
    out: dict[str, Any] = {
        "name": m.name,
        "generators": [{"name": g, "degree": d} for g, d in m.generators],
    }
    if m.differential:
        out["differential"] = [{"src": s, "image": _vec_json(v)} for s, v in m.differential.items()]
    if m.bracket:
        out["bracket"] = [{"left": a, "right": b, "value": _vec_json(v)} for (a, b), v in m.bracket.items()]
    if m.representations:
        reps = {}
        for name, r in m.representations.items():
            rj: dict[str, Any] = {"basis": [{"name": v, "degree": d} for v, d in r.basis]}
            if r.differential:
                rj["differential"] = [{"src": s, "image": _vec_json(v)} for s, v in r.differential.items()]
            if r.action:
                rj["action"] = [{"gen": x, "vector": v, "value": _vec_json(img)}
                                for (x, v), img in r.action.items()]
            reps[name] = rj
        out["representations"] = reps
    if m.requests:
        out["requests"] = m.requests
    return out


def serialize_manifest(m: Manifest) -> str:
    return json.dumps(manifest_to_json(m), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def manifest_from_lie(g: DgLieAlgebra, reps: dict[str, Representation] | None = None) -> Manifest:
    """Manifest listing every nonzero bracket [x_i, x_j] with i <= j."""
    names = g.names
    br = {(names[i], names[j]): {names[k]: c for k, c in v.items()}
          for (i, j), v in sorted(g.bracket_table.items()) if i <= j and v}
    diff = {names[i]: {names[k]: c for k, c in v.items()} for i, v in sorted(g.differential.items()) if v}
    rs = {}
    for rname, r in (reps or {}).items():
        rs[rname] = RepSpec(list(zip(r.names, r.degrees)),
                            {r.names[i]: {r.names[k]: c for k, c in v.items()}
                             for i, v in sorted(r.differential.items())},
                            {(names[x], r.names[v]): {r.names[k]: c for k, c in img.items()}
                             for (x, v), img in sorted(r.action.items())})
    return Manifest(g.name, list(zip(names, g.degrees)), diff, br, rs)


# --------------------------------------------------------------------------
# bundled fixtures

FIXTURES = ("abelian1", "abelian2", "abelian3", "abelian4", "abelian5",
            "aff1", "heis3", "sl2", "aff1_x_sl2", "trivial_shifted")


def fixture_text(name: str) -> str:
    return resources.files("mgce.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> Manifest:
    if name not in FIXTURES:
        raise UnknownName(name, "fixtures")
    return parse_manifest(fixture_text(name))
