"""Differential graded Lie algebras and representations as structure constants.

Elements are sparse vectors ``{generator index: Fraction}``.  Degrees are
homological: the differential has degree -1, the bracket is degree-additive.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .complex import ChainComplex, Violation
from .linalg import RatMatrix
from .mixed import MixedGradedModule

Vec = dict[int, Fraction]


class AxiomFailure(RuntimeError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def vadd(acc: Vec, v: Mapping[int, Fraction], c=1) -> Vec:
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def _clean(v: Mapping[int, Fraction]) -> Vec:
    return {k: Fraction(x) for k, x in v.items() if x}


@dataclass(frozen=True)
class DgLieAlgebra:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    differential: Mapping[int, Vec] = field(default_factory=dict)
    bracket_table: Mapping[tuple[int, int], Vec] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        object.__setattr__(self, "differential",
                           {i: _clean(v) for i, v in self.differential.items() if _clean(v)})
        object.__setattr__(self, "bracket_table",
                           {k: _clean(v) for k, v in self.bracket_table.items() if _clean(v)})

    @property
    def dim(self) -> int:
        return len(self.names)

    def deg(self, i: int) -> int:
        return self.degrees[i]

    def is_discrete(self) -> bool:
        return all(d == 0 for d in self.degrees)

    def is_abelian(self) -> bool:
        return not self.bracket_table

    def index(self, name: str) -> int:
        return self.names.index(name)

    def d_gen(self, i: int) -> Vec:
        return self.differential.get(i, {})

    def br_gen(self, i: int, j: int) -> Vec:
        return self.bracket_table.get((i, j), {})

    def d(self, v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            vadd(out, self.d_gen(i), x)
        return out

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                vadd(out, self.br_gen(i, j), x * y)
        return out

    def underlying_complex(self) -> ChainComplex:
        """Generators grouped by degree, in generator order; labels are generator indices."""
        by_deg: dict[int, list[int]] = {}
        for i, dg in enumerate(self.degrees):
            by_deg.setdefault(dg, []).append(i)
        pos = {i: (dg, k) for dg, lst in by_deg.items() for k, i in enumerate(lst)}
        diffs = {}
        for n, lst in by_deg.items():
            ent = {}
            for col, i in enumerate(lst):
                for j, v in self.d_gen(i).items():
                    ent[(pos[j][1], col)] = v
            diffs[n] = RatMatrix(len(by_deg.get(n - 1, [])), len(lst), ent)
        return ChainComplex({n: len(l) for n, l in by_deg.items()}, diffs, by_deg)

    def __repr__(self):
        return f"DgLieAlgebra({self.name or '?'}, dim={self.dim})"


def make_lie(gens: Sequence[tuple[str, int]], brackets: Mapping[tuple[str, str], Mapping[str, object]] = (),
             differential: Mapping[str, Mapping[str, object]] = (), name: str = "",
             complete: bool = True) -> DgLieAlgebra:
    """Build from names; with ``complete`` the reversed brackets are filled by antisymmetry."""
    names = [g for g, _ in gens]
    degs = [d for _, d in gens]
    idx = {n: i for i, n in enumerate(names)}
    table: dict[tuple[int, int], Vec] = {}
    for (a, b), val in dict(brackets).items():
        table[(idx[a], idx[b])] = {idx[k]: Fraction(v) for k, v in val.items()}
    if complete:
        for (i, j), val in list(table.items()):
            if (j, i) not in table:
                s = -_sign(degs[i] * degs[j])
                table[(j, i)] = {k: s * v for k, v in val.items()}
    diff = {idx[a]: {idx[k]: Fraction(v) for k, v in val.items()} for a, val in dict(differential).items()}
    return DgLieAlgebra(tuple(names), tuple(degs), diff, table, name)


# --------------------------------------------------------------------------
# validation

def _describe(g: DgLieAlgebra, *idx: int) -> tuple[str, ...]:
    return tuple(g.names[i] for i in idx)


def validate_lie(g: DgLieAlgebra) -> Violation | None:
    n = g.dim
    for i, v in g.differential.items():
        for j in v:
            if g.deg(j) != g.deg(i) - 1:
                return Violation("differential degree", _describe(g, i, j), "d must have degree -1")
    for (i, j), v in g.bracket_table.items():
        for k in v:
            if g.deg(k) != g.deg(i) + g.deg(j):
                return Violation("bracket degree", _describe(g, i, j, k), "bracket must be degree-additive")
    for i in range(n):
        dd = g.d(g.d_gen(i))
        if dd:
            return Violation("d^2 != 0", _describe(g, i), str(dd))
    for i, j in product(range(n), repeat=2):
        p, q = g.deg(i), g.deg(j)
        s = vadd(dict(g.br_gen(i, j)), g.br_gen(j, i), _sign(p * q))
        if s:
            return Violation("antisymmetry", _describe(g, i, j), str(s))
    for i, j in product(range(n), repeat=2):
        p = g.deg(i)
        lhs = g.d(g.br_gen(i, j))
        rhs = vadd(g.bracket(g.d_gen(i), {j: 1}), g.bracket({i: 1}, g.d_gen(j)), _sign(p))
        if vadd(dict(lhs), rhs, -1):
            return Violation("Leibniz", _describe(g, i, j), "d[x,y] != [dx,y] + (-1)^|x| [x,dy]")
    for i, j, k in product(range(n), repeat=3):
        p, q, r = g.deg(i), g.deg(j), g.deg(k)
        t: Vec = {}
        vadd(t, g.bracket({i: 1}, g.br_gen(j, k)), _sign(p * r))
        vadd(t, g.bracket({j: 1}, g.br_gen(k, i)), _sign(p * q))
        vadd(t, g.bracket({k: 1}, g.br_gen(i, j)), _sign(q * r))
        if t:
            return Violation("Jacobi", _describe(g, i, j, k), str(t))
    return None


@dataclass(frozen=True)
class Representation:
    """dg representation: ``action[(x, v)]`` is the vector ``x . v``."""
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    differential: Mapping[int, Vec] = field(default_factory=dict)
    action: Mapping[tuple[int, int], Vec] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "differential",
                           {i: _clean(v) for i, v in self.differential.items() if _clean(v)})
        object.__setattr__(self, "action",
                           {k: _clean(v) for k, v in self.action.items() if _clean(v)})

    @property
    def dim(self) -> int:
        return len(self.names)

    def d(self, v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            vadd(out, self.differential.get(i, {}), x)
        return out

    def act(self, x: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in v.items():
                vadd(out, self.action.get((i, j), {}), a * b)
        return out


def trivial_rep(g: DgLieAlgebra | None = None) -> Representation:
    return Representation(("1",), (0,), name="trivial")


def adjoint_rep(g: DgLieAlgebra) -> Representation:
    return Representation(g.names, g.degrees, dict(g.differential), dict(g.bracket_table),
                          name="adjoint")


def validate_rep(g: DgLieAlgebra, m: Representation) -> Violation | None:
    for i, v in m.differential.items():
        for j in v:
            if m.degrees[j] != m.degrees[i] - 1:
                return Violation("differential degree", (m.names[i], m.names[j]))
    for (x, v), w in m.action.items():
        for k in w:
            if m.degrees[k] != g.deg(x) + m.degrees[v]:
                return Violation("action degree", (g.names[x], m.names[v], m.names[k]))
    for v in range(m.dim):
        if m.d(m.differential.get(v, {})):
            return Violation("d^2 != 0", (m.names[v],))
    for x, v in product(range(g.dim), range(m.dim)):
        lhs = m.d(m.act({x: 1}, {v: 1}))
        rhs = vadd(m.act(g.d_gen(x), {v: 1}), m.act({x: 1}, m.differential.get(v, {})),
                   _sign(g.deg(x)))
        if vadd(dict(lhs), rhs, -1):
            return Violation("compatibility", (g.names[x], m.names[v]),
                             "d(x.v) != dx.v + (-1)^|x| x.dv")
    for x, y, v in product(range(g.dim), range(g.dim), range(m.dim)):
        lhs = m.act(g.br_gen(x, y), {v: 1})
        rhs = vadd(m.act({x: 1}, m.act({y: 1}, {v: 1})),
                   m.act({y: 1}, m.act({x: 1}, {v: 1})), -_sign(g.deg(x) * g.deg(y)))
        if vadd(dict(lhs), rhs, -1):
            return Violation("action law", (g.names[x], g.names[y], m.names[v]),
                             "[x,y].v != x.(y.v) - (-1)^{pq} y.(x.v)")
    return None


# --------------------------------------------------------------------------
# constructions

def product_lie(g: DgLieAlgebra, h: DgLieAlgebra) -> DgLieAlgebra:
    off = g.dim
    diff = dict(g.differential)
    diff.update({i + off: {k + off: v for k, v in val.items()} for i, val in h.differential.items()})
    table = dict(g.bracket_table)
    table.update({(i + off, j + off): {k + off: v for k, v in val.items()}
                  for (i, j), val in h.bracket_table.items()})
    return DgLieAlgebra(g.names + h.names, g.degrees + h.degrees, diff, table,
                        f"{g.name}x{h.name}" if (g.name or h.name) else "")


def trivial_lie(c: ChainComplex) -> DgLieAlgebra:
    """Abelian dg Lie algebra on a chosen basis of c (generator ``c{n}_{i}``)."""
    names, degs, idx = [], [], {}
    for n, k in c.dims.items():
        for i in range(k):
            idx[(n, i)] = len(names)
            names.append(f"c{n}_{i}")
            degs.append(n)
    diff = {}
    for n, m in c.diffs.items():
        for (i, j), v in m.entries.items():
            diff.setdefault(idx[(n, j)], {})[idx[(n - 1, i)]] = v
    return DgLieAlgebra(tuple(names), tuple(degs), diff, {}, "triv")


def abelian(n: int, degree: int = 0) -> DgLieAlgebra:
    return DgLieAlgebra(tuple(f"x{i + 1}" for i in range(n)), (degree,) * n, name=f"abelian{n}")


def aff1() -> DgLieAlgebra:
    return make_lie([("e1", 0), ("e2", 0)], {("e1", "e2"): {"e1": 1}}, name="aff1")


def sl2() -> DgLieAlgebra:
    return make_lie([("h", 0), ("e", 0), ("f", 0)],
                    {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}}, name="sl2")


def heis3() -> DgLieAlgebra:
    return make_lie([("x", 0), ("y", 0), ("z", 0)], {("x", "y"): {"z": 1}}, name="heis3")


def zero_lie() -> DgLieAlgebra:
    return DgLieAlgebra((), (), name="zero")


def dual_numbers_current(h: DgLieAlgebra) -> DgLieAlgebra:
    """``h (x) A`` for ``A = span(1, t, s)``, ``|t| = 1``, ``dt = s``, all products of t, s zero.

    For discrete h this is a dg Lie algebra with odd generators and a nonzero
    differential; the projection to h is a quasi-isomorphism.
    """
    if not h.is_discrete():
        raise ValueError("h must be discrete")
    n = h.dim
    names = list(h.names) + [f"{x}.t" for x in h.names] + [f"{x}.s" for x in h.names]
    degs = [0] * n + [1] * n + [0] * n
    diff = {n + i: {2 * n + i: Fraction(1)} for i in range(n)}
    table = {}
    for (i, j), v in h.bracket_table.items():
        table[(i, j)] = dict(v)
        for off in (n, 2 * n):
            table[(i, j + off)] = {k + off: c for k, c in v.items()}
            table[(i + off, j)] = {k + off: c for k, c in v.items()}
    return DgLieAlgebra(tuple(names), tuple(degs), diff, table, f"{h.name}[t,s]")


def acyclic_extension(h: DgLieAlgebra, acting: int | None = None) -> DgLieAlgebra:
    """h + span(a, b) with ``|a| = 1``, ``da = b``; optionally ``[x, a] = a``, ``[x, b] = b`` for one generator x."""
    n = h.dim
    names = h.names + ("a", "b")
    degs = h.degrees + (1, 0)
    diff = dict(h.differential)
    diff[n] = {n + 1: Fraction(1)}
    table = dict(h.bracket_table)
    if acting is not None:
        table[(acting, n)] = {n: Fraction(1)}
        table[(n, acting)] = {n: Fraction(-1)}
        table[(acting, n + 1)] = {n + 1: Fraction(1)}
        table[(n + 1, acting)] = {n + 1: Fraction(-1)}
    return DgLieAlgebra(names, degs, diff, table, f"{h.name}+acyclic")


def random_two_step(rng: random.Random, max_dim: int = 5, degrees: Sequence[int] = (0,),
                    coeffs: Sequence[int] = (-2, -1, 1, 2)) -> DgLieAlgebra:
    """Random two-step nilpotent algebra: brackets of the top part land in a central part."""
    total = rng.randint(1, max_dim)
    ntop = rng.randint(1, total)
    top_deg = [rng.choice(list(degrees)) for _ in range(ntop)]
    # central generators carry degrees that brackets can hit
    wanted = sorted({a + b for a in top_deg for b in top_deg})
    cen_deg = [rng.choice(wanted) for _ in range(total - ntop)]
    degs = top_deg + cen_deg
    table: dict[tuple[int, int], Vec] = {}
    for i in range(ntop):
        for j in range(i, ntop):
            p, q = degs[i], degs[j]
            if i == j and p % 2 == 0:
                continue
            targets = [k for k in range(ntop, total) if degs[k] == p + q]
            if not targets or rng.random() < 0.3:
                continue
            v = {k: Fraction(rng.choice(coeffs)) for k in targets if rng.random() < 0.7}
            if not v:
                continue
            table[(i, j)] = v
            if i != j:
                s = -_sign(p * q)
                table[(j, i)] = {k: s * c for k, c in v.items()}
    names = tuple(f"g{i}" for i in range(total))
    return DgLieAlgebra(names, tuple(degs), {}, table, "random")


# --------------------------------------------------------------------------
# the mixed graded cone

@dataclass(frozen=True)
class MixedGradedLie:
    """Mixed graded Lie algebra on a finite basis.

    ``basis[k] = (weight, degree, label)``; ``module`` is the underlying mixed
    graded module whose (weight, degree) bases list these elements in order.
    """
    basis: tuple[tuple[int, int, object], ...]
    d_map: Mapping[int, Vec]
    eps_map: Mapping[int, Vec]
    bracket_table: Mapping[tuple[int, int], Vec]
    module: MixedGradedModule

    def br(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                vadd(out, self.bracket_table.get((i, j), {}), x * y)
        return out

    def lin(self, table, v) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            vadd(out, table.get(i, {}), x)
        return out

    def deg(self, i: int) -> int:
        return self.basis[i][1]


def validate_mixed_lie(L: MixedGradedLie) -> Violation | None:
    n = len(L.basis)
    names = [b[2] for b in L.basis]
    for i, j in product(range(n), repeat=2):
        p, q = L.deg(i), L.deg(j)
        s = vadd(dict(L.br({i: 1}, {j: 1})), L.br({j: 1}, {i: 1}), _sign(p * q))
        if s:
            return Violation("antisymmetry", (names[i], names[j]))
        for name, op in (("Leibniz", L.d_map), ("eps-derivation", L.eps_map)):
            lhs = L.lin(op, L.br({i: 1}, {j: 1}))
            rhs = vadd(L.br(L.lin(op, {i: 1}), {j: 1}), L.br({i: 1}, L.lin(op, {j: 1})), _sign(p))
            if vadd(dict(lhs), rhs, -1):
                return Violation(name, (names[i], names[j]))
    for i, j, k in product(range(n), repeat=3):
        p, q, r = L.deg(i), L.deg(j), L.deg(k)
        t: Vec = {}
        vadd(t, L.br({i: 1}, L.br({j: 1}, {k: 1})), _sign(p * r))
        vadd(t, L.br({j: 1}, L.br({k: 1}, {i: 1})), _sign(p * q))
        vadd(t, L.br({k: 1}, L.br({i: 1}, {j: 1})), _sign(q * r))
        if t:
            return Violation("Jacobi", (names[i], names[j], names[k]))
    return None


def _module_from_basis(basis, d_map, eps_map) -> MixedGradedModule:
    """Mixed graded module spanned by ``basis`` (weight, degree, label) in list order."""
    cells: dict[tuple[int, int], list[int]] = {}
    for k, (w, dg, _) in enumerate(basis):
        cells.setdefault((w, dg), []).append(k)
    pos = {k: i for lst in cells.values() for i, k in enumerate(lst)}

    def block(src, tgt, table):
        ent = {(pos[j], c): v for c, k in enumerate(cells[src]) for j, v in table.get(k, {}).items()}
        return RatMatrix(len(cells.get(tgt, ())), len(cells[src]), ent)

    weights: dict[int, ChainComplex] = {}
    for w in sorted({w for w, _ in cells}):
        degs = {dg: len(lst) for (w2, dg), lst in cells.items() if w2 == w}
        diffs = {dg: block((w, dg), (w, dg - 1), d_map) for dg in degs}
        labels = {dg: [basis[k][2] for k in cells[(w, dg)]] for dg in degs}
        weights[w] = ChainComplex(degs, diffs, labels)
    mixed = {(w, dg): block((w, dg), (w - 1, dg + 1), eps_map) for (w, dg) in cells if w - 1 in weights}
    return MixedGradedModule(weights, {k: m for k, m in mixed.items() if not m.is_zero()})


def cone_mixed(g: DgLieAlgebra, check: bool = True) -> MixedGradedLie:
    """Weight 0: g; weight 1: ``g[-1]`` (the barred copy), eps = identity bar(x) -> x.

    Brackets: ``[x, y]`` as in g, ``[x, bar y] = (-1)^{|x|} bar[x, y]``,
    ``[bar y, x] = bar[y, x]``, ``[bar x, bar y] = 0``.  The differential on the
    barred copy is ``-d`` (shift sign).
    """
    n = g.dim
    basis = tuple([(0, g.deg(i), g.names[i]) for i in range(n)]
                  + [(1, g.deg(i) - 1, "bar " + g.names[i]) for i in range(n)])
    d_map = {}
    for i in range(n):
        d_map[i] = dict(g.d_gen(i))
        d_map[i + n] = {k + n: -v for k, v in g.d_gen(i).items()}
    eps_map = {i + n: {i: Fraction(1)} for i in range(n)}
    table = {}
    for (i, j), v in g.bracket_table.items():
        table[(i, j)] = dict(v)
        s = _sign(g.deg(i))
        table[(i, j + n)] = {k + n: s * c for k, c in v.items()}
        table[(j + n, i)] = {k + n: c for k, c in g.br_gen(j, i).items()}
    L = MixedGradedLie(basis, d_map, eps_map, table, _module_from_basis(basis, d_map, eps_map))
    if check:
        v = validate_mixed_lie(L)
        if v is not None:
            raise AxiomFailure(f"cone of {g.name or 'g'} failed: {v}")
    return L
