"""Strict mixed graded modules.

A mixed graded module is a family of chain complexes ``M_p`` indexed by a
weight ``p`` together with maps ``eps[p, n] : (M_p)_n -> (M_{p-1})_{n+1}``
such that ``eps o eps = 0`` and ``eps o d + d o eps = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .complex import (ChainComplex, Violation, direct_sum_complex, dual_complex, dual_sign,
                      point, shift, tensor_basis, tensor_complex, validate_complex)
from .linalg import RatMatrix, ShapeMismatch


class FloorTooHigh(ValueError):
    pass


@dataclass(frozen=True)
class GradedModule:
    weights: Mapping[int, ChainComplex]

    def __post_init__(self):
        object.__setattr__(self, "weights",
                           {p: c for p, c in sorted(self.weights.items()) if c.dims})

    def weight(self, p: int) -> ChainComplex:
        return self.weights.get(p, ChainComplex({}))

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.weights == other.weights


@dataclass(frozen=True)
class MixedGradedModule:
    weights: Mapping[int, ChainComplex]
    mixed: Mapping[tuple[int, int], RatMatrix] = field(default_factory=dict)

    def __post_init__(self):
        weights = {p: c for p, c in sorted(self.weights.items()) if c.dims}
        object.__setattr__(self, "weights", weights)
        mixed = {}
        for (p, n), m in self.mixed.items():
            if m.is_zero():
                continue
            want = (self._dim(weights, p - 1, n + 1), self._dim(weights, p, n))
            if m.shape != want:
                raise ShapeMismatch(f"eps[{p}, {n}] has shape {m.shape}, expected {want}")
            mixed[(p, n)] = m
        object.__setattr__(self, "mixed", mixed)

    @staticmethod
    def _dim(weights, p, n):
        c = weights.get(p)
        return c.dim(n) if c is not None else 0

    def weight(self, p: int) -> ChainComplex:
        return self.weights.get(p, ChainComplex({}))

    def dim(self, p: int, n: int) -> int:
        return self._dim(self.weights, p, n)

    def d(self, p: int, n: int) -> RatMatrix:
        return self.weight(p).d(n)

    def eps(self, p: int, n: int) -> RatMatrix:
        m = self.mixed.get((p, n))
        if m is None:
            return RatMatrix.zero(self.dim(p - 1, n + 1), self.dim(p, n))
        return m

    def cells(self) -> list[tuple[int, int]]:
        return [(p, n) for p, c in self.weights.items() for n in c.dims]

    def weight_support(self) -> tuple[int, int] | None:
        if not self.weights:
            return None
        return min(self.weights), max(self.weights)

    def dims_table(self) -> dict[int, dict[int, int]]:
        return {p: dict(c.dims) for p, c in self.weights.items()}

    def underlying(self) -> GradedModule:
        return oblv(self)

    def __eq__(self, other):
        if not isinstance(other, MixedGradedModule):
            return NotImplemented
        return self.weights == other.weights and self.mixed == other.mixed

    def __hash__(self):
        return hash(tuple((p, tuple(c.dims.items())) for p, c in self.weights.items()))

    def __repr__(self):
        return f"MixedGradedModule({self.dims_table()})"


def unit(q: int = 0) -> MixedGradedModule:
    """``k(q)``: the rationals in weight q, degree 0."""
    return MixedGradedModule({q: point(0)})


def oblv(m: MixedGradedModule) -> GradedModule:
    return GradedModule(dict(m.weights))


def validate_mixed(m: MixedGradedModule) -> Violation | None:
    for p, c in m.weights.items():
        v = validate_complex(c)
        if v is not None:
            return Violation(v.kind, (p,) + v.where, v.detail)
    for p, n in m.cells():
        e = m.eps(p, n)
        if e.is_zero():
            continue
        sq = m.eps(p - 1, n + 1) @ e
        if not sq.is_zero():
            return Violation("eps^2 != 0", (p, n), f"{sq.nnz()} nonzero entries")
        anti = m.d(p - 1, n + 1) @ e + m.eps(p, n - 1) @ m.d(p, n)
        if not anti.is_zero():
            return Violation("eps d + d eps != 0", (p, n), f"{anti.nnz()} nonzero entries")
    # eps may be zero on (p, n) while d eps on (p, n-1) is not
    for p, n in m.cells():
        if m.eps(p, n).is_zero() and (p, n - 1) in m.mixed:
            anti = m.eps(p, n - 1) @ m.d(p, n)
            if not anti.is_zero():
                return Violation("eps d + d eps != 0", (p, n), f"{anti.nnz()} nonzero entries")
    return None


def triv_eps(g: GradedModule) -> MixedGradedModule:
    return MixedGradedModule(dict(g.weights))


def weight_shift(m: MixedGradedModule, q: int) -> MixedGradedModule:
    return MixedGradedModule({p + q: c for p, c in m.weights.items()},
                             {(p + q, n): e for (p, n), e in m.mixed.items()})


def adjoint_eps(g: GradedModule, side: str = "left") -> MixedGradedModule:
    """Left adjoint ``(L g)_p = g_p + g_{p+1}[1]`` or right adjoint ``(R g)_p = g_p + g_{p-1}[-1]``.

    In both cases eps is the identity from the plain copy of ``g_p`` (left) or
    the shifted copy ``g_{p-1}[-1]`` (right) onto the matching copy one weight
    lower, and zero on the other summand. Labels are ``("plain"|"shifted", i)``.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    off = 1 if side == "left" else -1
    wts = set()
    for p in g.weights:
        wts.update({p, p - off})
    weights = {}
    for p in sorted(wts):
        plain = g.weight(p)
        shifted = shift(g.weight(p + off), off)
        weights[p] = direct_sum_complex([plain, shifted], tags=("plain", "shifted"))
    mixed = {}
    for p, c in weights.items():
        for n in c.dims:
            if side == "left":
                # plain g_p (degree n) -> shifted copy of g_p inside weight p-1 (degree n+1)
                k = g.weight(p).dim(n)
                if not k:
                    continue
                tgt = weights[p - 1]
                start = tgt.dim(n + 1) - k  # shifted summand sits after the plain one
                ent = {(start + i, i): 1 for i in range(k)}
            else:
                # shifted g_{p-1}[-1] (degree n) -> plain g_{p-1} (degree n+1) in weight p-1
                k = g.weight(p - 1).dim(n + 1)
                if not k:
                    continue
                first = g.weight(p).dim(n)
                ent = {(i, first + i): 1 for i in range(k)}
            mixed[(p, n)] = RatMatrix(weights[p - 1].dim(n + 1), c.dim(n), ent)
    return MixedGradedModule(weights, mixed)


def free_eps(c: ChainComplex, q: int = 0) -> MixedGradedModule:
    """``Free_eps(c)((q))``: c in weight q, c[1] in weight q - 1, identity eps."""
    return adjoint_eps(GradedModule({q: c}), "left")


# --------------------------------------------------------------------------
# monoidal structure

def _tensor_weight_basis(m: MixedGradedModule, n_: MixedGradedModule, p: int):
    """Per degree: list of (i, a, x, y) for x in (M_i)_a, y in (N_{p-i})_{deg-a}."""
    out: dict[int, list] = {}
    for i, ci in m.weights.items():
        cj = n_.weights.get(p - i)
        if cj is None:
            continue
        for deg, lst in tensor_basis(ci, cj).items():
            out.setdefault(deg, []).extend((i, a, x, y) for (a, x, y) in lst)
    return out


def tensor_mixed(m: MixedGradedModule, n_: MixedGradedModule) -> MixedGradedModule:
    """Weight p is the block sum over i of ``M_i (x) N_{p-i}`` (ordered by i).

    eps acts by ``eps_M (x) id + (-1)^{|x|} id (x) eps_N``.
    """
    if not m.weights or not n_.weights:
        return MixedGradedModule({})
    pmin = min(m.weights) + min(n_.weights)
    pmax = max(m.weights) + max(n_.weights)
    weights = {}
    bases = {}
    for p in range(pmin, pmax + 1):
        parts, tags = [], []
        for i, ci in m.weights.items():
            cj = n_.weights.get(p - i)
            if cj is not None:
                parts.append(tensor_complex(ci, cj))
                tags.append(i)
        if parts:
            weights[p] = direct_sum_complex(parts, tags=tags)
            bases[p] = _tensor_weight_basis(m, n_, p)
    pos = {p: {deg: {t: k for k, t in enumerate(lst)} for deg, lst in b.items()}
           for p, b in bases.items()}
    mcols = {(p, a): m.eps(p, a).col_dicts() for p, a in m.cells()}
    ncols = {(p, a): n_.eps(p, a).col_dicts() for p, a in n_.cells()}
    mixed = {}
    for p, b in bases.items():
        tgt_w = pos.get(p - 1, {})
        for deg, lst in b.items():
            tgt = tgt_w.get(deg + 1, {})
            ent = {}
            for col, (i, a, x, y) in enumerate(lst):
                j, bdeg = p - i, deg - a
                for x2, v in mcols[(i, a)][x].items():
                    r = tgt[(i - 1, a + 1, x2, y)]
                    ent[(r, col)] = ent.get((r, col), 0) + v
                s = -1 if a % 2 else 1
                for y2, v in ncols[(j, bdeg)][y].items():
                    r = tgt[(i, a, x, y2)]
                    ent[(r, col)] = ent.get((r, col), 0) + s * v
            if ent:
                mixed[(p, deg)] = RatMatrix(len(tgt), len(lst), ent)
    return MixedGradedModule(weights, mixed)


def braiding(m: MixedGradedModule, n_: MixedGradedModule) -> dict[tuple[int, int], RatMatrix]:
    """Koszul-signed swap ``M (x) N -> N (x) M`` as matrices per (weight, degree)."""
    src = {p: _tensor_weight_basis(m, n_, p) for p in tensor_mixed(m, n_).weights}
    tgt = {p: _tensor_weight_basis(n_, m, p) for p in src}
    out = {}
    for p, b in src.items():
        for deg, lst in b.items():
            tpos = {t: k for k, t in enumerate(tgt[p][deg])}
            ent = {}
            for col, (i, a, x, y) in enumerate(lst):
                s = -1 if (a * (deg - a)) % 2 else 1
                ent[(tpos[(p - i, deg - a, y, x)], col)] = s
            out[(p, deg)] = RatMatrix(len(lst), len(lst), ent)
    return out


@lru_cache(maxsize=None)
def _degree_twist(d: int) -> int:
    # t(d) t(d+1) = (-1)^{d(d+3)/2}, t(0) = 1
    if d == 0:
        return 1
    if d > 0:
        return _degree_twist(d - 1) * (-1 if ((d - 1) * (d + 2) // 2) % 2 else 1)
    return _degree_twist(d + 1) * (-1 if (d * (d + 3) // 2) % 2 else 1)


def _hom_twist(q: int, a: int) -> int:
    """Sign attached to maps out of ``(M_q)_a``; makes ``Hom(M, k(0))`` literally ``dual_mixed(M)``."""
    return _degree_twist(-a) * (-1 if q % 2 else 1)


def _hom_basis(m: MixedGradedModule, n_: MixedGradedModule, p: int):
    """Per degree d: list of (q, a, i, j) = elementary map from (M_q)_a[i] to (N_{q+p})_{a+d}[j]."""
    out: dict[int, list] = {}
    for q in sorted(m.weights):
        cn = n_.weights.get(q + p)
        if cn is None:
            continue
        cm = m.weights[q]
        for a in sorted(cm.dims):
            for b in sorted(cn.dims):
                out.setdefault(b - a, []).extend(
                    (q, a, i, j) for i in range(cm.dim(a)) for j in range(cn.dim(b)))
    for d in out:
        out[d].sort()
    return out


def _hom_module(m, n_, extra_eps=None):
    """Standard hom complex, twisted by ``_hom_twist``.

    ``D f = d_N f - (-1)^{|f|} f d_M`` and ``eps f = eps_N f - (-1)^{|f|} f eps_M``.
    ``extra_eps(q, a, i, deg_f)`` may return additional ``{(q', a', i', j'): coeff}``
    terms of the mixed map (before twisting) for the elementary map with index j.
    """
    if not m.weights or not n_.weights:
        return MixedGradedModule({})
    qs, ps = list(m.weights), list(n_.weights)
    wts = sorted({b - a for a in qs for b in ps})
    bases = {p: _hom_basis(m, n_, p) for p in wts}
    bases = {p: b for p, b in bases.items() if b}
    pos = {p: {d: {t: k for k, t in enumerate(lst)} for d, lst in b.items()}
           for p, b in bases.items()}
    mrows = {(q, a): m.d(q, a).row_dicts() for q, a in m.cells()}
    merows = {(q, a): m.eps(q, a).row_dicts() for q, a in m.cells()}
    ncols = {(q, a): n_.d(q, a).col_dicts() for q, a in n_.cells()}
    necols = {(q, a): n_.eps(q, a).col_dicts() for q, a in n_.cells()}

    def tw(t):
        return _hom_twist(t[0], t[1])

    weights, mixed = {}, {}
    for p, b in bases.items():
        diffs = {}
        for d, lst in b.items():
            tgt = pos[p].get(d - 1, {})
            ent = {}
            s = -1 if d % 2 else 1
            for col, t in enumerate(lst):
                q, a, i, j = t
                terms = {}
                # d_N o f
                for j2, v in ncols[(q + p, a + d)][j].items():
                    key = (q, a, i, j2)
                    terms[key] = terms.get(key, 0) + v
                # -(-1)^d f o d_M : f d_M is supported on (M_q)_{a+1}
                if (q, a + 1) in mrows:
                    for i2, v in mrows[(q, a + 1)][i].items():
                        key = (q, a + 1, i2, j)
                        terms[key] = terms.get(key, 0) - s * v
                for key, v in terms.items():
                    if v:
                        r = tgt[key]
                        ent[(r, col)] = ent.get((r, col), 0) + v * tw(key) * tw(t)
            diffs[d] = RatMatrix(len(tgt), len(lst), ent)
        labels = {d: list(lst) for d, lst in b.items()}
        weights[p] = ChainComplex({d: len(lst) for d, lst in b.items()}, diffs, labels)
    for p, b in bases.items():
        if p - 1 not in pos:
            continue
        for d, lst in b.items():
            tgt = pos[p - 1].get(d + 1, {})
            s = -1 if d % 2 else 1
            ent = {}
            for col, t in enumerate(lst):
                q, a, i, j = t
                terms = {}
                # eps_N o f lands in Hom((M_q)_a, (N_{q+p-1})_{a+d+1})
                for j2, v in necols[(q + p, a + d)][j].items():
                    key = (q, a, i, j2)
                    terms[key] = terms.get(key, 0) + v
                # f o eps_M is supported on (M_{q+1})_{a-1}
                if (q + 1, a - 1) in merows:
                    for i2, v in merows[(q + 1, a - 1)][i].items():
                        key = (q + 1, a - 1, i2, j)
                        terms[key] = terms.get(key, 0) - s * v
                if extra_eps is not None:
                    for key, v in extra_eps(p, d, t).items():
                        terms[key] = terms.get(key, 0) + v
                for key, v in terms.items():
                    if v:
                        r = tgt[key]
                        ent[(r, col)] = ent.get((r, col), 0) + v * tw(key) * tw(t)
            if ent:
                mixed[(p, d)] = RatMatrix(len(tgt), len(lst), ent)
    return MixedGradedModule(weights, mixed)


def internal_hom(m: MixedGradedModule, n_: MixedGradedModule) -> MixedGradedModule:
    """Internal mapping object: weight p, degree d is ``+_q Hom_d(M_q, N_{q+p})``.

    The elementary maps out of ``(M_q)_a`` are rescaled by a fixed sign so that
    ``internal_hom(k(0), N) == N`` and ``internal_hom(M, k(0)) == dual_mixed(M)``
    hold as exact matrix equalities.
    """
    return _hom_module(m, n_)


def dual_mixed(m: MixedGradedModule) -> MixedGradedModule:
    """``(M^v)_p = (M_{-p})^v``; eps^v in dual degree n is ``(-1)^{n(n+1)/2} eps^T``."""
    weights = {-p: dual_complex(c) for p, c in m.weights.items()}
    mixed = {}
    for p in weights:
        for n in weights[p].dims:
            # source ((M_{-p})_{-n})^*, target ((M_{-p+1})_{-n-1})^* in weight p-1
            e = m.eps(-p + 1, -n - 1)
            if not e.is_zero():
                mixed[(p, n)] = e.T.scale(dual_sign(n + 1))
    return MixedGradedModule(weights, mixed)


def tate_total(m: MixedGradedModule, weight_floor: int = 0) -> ChainComplex:
    """Total complex of ``+_{p >= floor} M_{-p}[-2p]`` with differential ``d + eps``.

    An element of internal degree a in weight w sits in total degree a + 2w.
    Degree-n basis is ordered by weight (ascending), labels are (w, a, i).
    ``weight_floor = 0`` gives the plain realization; weights above
    ``-weight_floor`` are dropped.
    """
    if weight_floor > 0:
        raise FloorTooHigh(f"weight_floor must be <= 0, got {weight_floor}")
    wts = [w for w in m.weights if w <= -weight_floor]
    basis: dict[int, list[tuple[int, int, int]]] = {}
    for w in wts:
        c = m.weights[w]
        for a, k in c.dims.items():
            basis.setdefault(a + 2 * w, []).extend((w, a, i) for i in range(k))
    for n in basis:
        basis[n].sort()
    pos = {n: {t: k for k, t in enumerate(lst)} for n, lst in basis.items()}
    dcols = {(w, a): m.d(w, a).col_dicts() for w in wts for a in m.weights[w].dims}
    ecols = {(w, a): m.eps(w, a).col_dicts() for w in wts for a in m.weights[w].dims}
    wset = set(wts)
    diffs = {}
    for n, lst in basis.items():
        tgt = pos.get(n - 1, {})
        ent = {}
        for col, (w, a, i) in enumerate(lst):
            for i2, v in dcols[(w, a)][i].items():
                ent[(tgt[(w, a - 1, i2)], col)] = v
            if w - 1 in wset:
                for i2, v in ecols[(w, a)][i].items():
                    ent[(tgt[(w - 1, a + 1, i2)], col)] = v
        diffs[n] = RatMatrix(len(tgt), len(lst), ent)
    return ChainComplex({n: len(l) for n, l in basis.items()}, diffs,
                        {n: list(l) for n, l in basis.items()})


def tate_realization(m: MixedGradedModule) -> ChainComplex:
    """Stabilized realization: the floor is pushed below every supported weight."""
    sup = m.weight_support()
    floor = min(0, -sup[1]) if sup else 0
    return tate_total(m, floor)


def realization(m: MixedGradedModule) -> ChainComplex:
    return tate_total(m, 0)
