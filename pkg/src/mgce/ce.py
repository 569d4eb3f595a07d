"""Mixed graded Chevalley-Eilenberg complexes.

Homological side: weight p is ``Sym^p(g[-1])``; the internal differential
comes from ``d_g`` and the mixed differential from the bracket.  The
cohomological side is the dual, optionally with coefficients in a
representation.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .complex import ChainComplex, Violation, homology
from .enveloping import _sym_bracket_terms, _sym_d, _sym_first_terms, sym_shifted_degrees
from .lie import DgLieAlgebra, Representation, product_lie, validate_lie, validate_rep
from .linalg import RatMatrix
from .mixed import (MixedGradedModule, _hom_module, _hom_twist, dual_mixed, tate_total,
                    tensor_mixed, validate_mixed)
from .symmetric import Mono, normalize, sym_basis, unshuffles


class NotLieMorphism(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class RepInvalid(ValueError):
    pass


class WindowUnfaithful(UserWarning):
    pass


def _add(acc, key, v):
    w = acc.get(key, 0) + v
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def _ce_eps(g: DgLieAlgebra, S: Mono, sdegs) -> dict[Mono, Fraction]:
    # opposite sign to the bracket part of the enveloping-cone eps, so that
    # e1 e2 -> +e1bar for aff(1); the two differ by (-1)^p on weight p
    return {m: -c for m, c in _sym_bracket_terms(g, S, sdegs).items()}


# --------------------------------------------------------------------------
# homological side

@dataclass
class CeHomological:
    algebra: DgLieAlgebra
    maxweight: int
    module: MixedGradedModule
    sdegs: tuple[int, ...]

    def degree(self, S: Mono) -> int:
        return sum(self.sdegs[i] for i in S)

    def basis(self, p: int) -> list[Mono]:
        w = self.module.weight(p)
        return [S for n in w.dims for S in w.labels[n]]

    def eps(self, S: Mono) -> dict[Mono, Fraction]:
        return _ce_eps(self.algebra, S, self.sdegs)

    def d(self, S: Mono) -> dict[Mono, Fraction]:
        return _sym_d(self.algebra, S, self.sdegs)

    def comultiply(self, S: Mono) -> dict[tuple[Mono, Mono], Fraction]:
        """Shuffle coproduct with Koszul signs."""
        out: dict = {}
        for s, a, b in unshuffles(S, self.sdegs):
            _add(out, (a, b), s)
        return out

    def counit(self, S: Mono) -> Fraction:
        return Fraction(1) if S == () else Fraction(0)


def ce_homological(g: DgLieAlgebra, maxweight: int | None = None) -> CeHomological:
    v = validate_lie(g)
    if v is not None:
        raise ValueError(f"not a dg Lie algebra: {v}")
    P = g.dim if maxweight is None else maxweight
    sdegs = sym_shifted_degrees(g)
    weights, mixed = {}, {}
    bases = {}
    for p in range(P + 1):
        by_deg: dict[int, list[Mono]] = {}
        for S in sym_basis(sdegs, p):
            by_deg.setdefault(sum(sdegs[i] for i in S), []).append(S)
        if by_deg:
            bases[p] = by_deg
    pos = {p: {n: {S: k for k, S in enumerate(l)} for n, l in b.items()} for p, b in bases.items()}
    for p, b in bases.items():
        diffs = {}
        for n, lst in b.items():
            tgt = pos[p].get(n - 1, {})
            ent = {}
            for col, S in enumerate(lst):
                for m, c in _sym_d(g, S, sdegs).items():
                    ent[(tgt[m], col)] = c
            diffs[n] = RatMatrix(len(tgt), len(lst), ent)
        weights[p] = ChainComplex({n: len(l) for n, l in b.items()}, diffs, b)
        if p - 1 not in pos:
            continue
        for n, lst in b.items():
            tgt = pos[p - 1].get(n + 1, {})
            ent = {}
            for col, S in enumerate(lst):
                for m, c in _ce_eps(g, S, sdegs).items():
                    ent[(tgt[m], col)] = c
            if ent:
                mixed[(p, n)] = RatMatrix(len(tgt), len(lst), ent)
    return CeHomological(g, P, MixedGradedModule(weights, mixed), sdegs)


def coderivation_failures(ce: CeHomological) -> list[tuple[str, Mono]]:
    """Cells where Delta fails to intertwine d or eps with their tensor extensions."""
    bad = []
    for p in range(ce.maxweight + 1):
        for S in ce.basis(p):
            for name, op in (("eps", ce.eps), ("d", ce.d)):
                lhs: dict = {}
                for m, c in op(S).items():
                    for key, c2 in ce.comultiply(m).items():
                        _add(lhs, key, c * c2)
                rhs: dict = {}
                for (a, b), c in ce.comultiply(S).items():
                    for m, c2 in op(a).items():
                        _add(rhs, (m, b), c * c2)
                    s = _sgn(ce.degree(a))
                    for m, c2 in op(b).items():
                        _add(rhs, (a, m), s * c * c2)
                if lhs != rhs:
                    bad.append((name, S))
    return bad


def coalgebra_failures(ce: CeHomological) -> list[tuple[str, Mono]]:
    """Coassociativity and counitality on every basis monomial of the window."""
    bad = []
    for p in range(ce.maxweight + 1):
        for S in ce.basis(p):
            delta = ce.comultiply(S)
            left: dict = {}
            right: dict = {}
            for (a, b), c in delta.items():
                for (a1, a2), c2 in ce.comultiply(a).items():
                    _add(left, (a1, a2, b), c * c2)
                for (b1, b2), c2 in ce.comultiply(b).items():
                    _add(right, (a, b1, b2), c * c2)
            if left != right:
                bad.append(("coassociativity", S))
            lu = {b: c for (a, b), c in delta.items() if a == ()}
            ru = {a: c for (a, b), c in delta.items() if b == ()}
            if lu != {S: 1} or ru != {S: 1}:
                bad.append(("counit", S))
    return bad


# --------------------------------------------------------------------------
# cohomological side

@dataclass
class CeCohomological:
    """Dual of the homological complex; weight -p holds the dual of ``Sym^p``.

    The basis element labelled S is the dual functional of S rescaled by the
    fixed sign used by ``internal_hom``; products carry the matching signs.
    """
    homological: CeHomological
    module: MixedGradedModule

    @property
    def algebra(self):
        return self.homological.algebra

    def _twist(self, S: Mono) -> int:
        return _hom_twist(len(S), self.homological.degree(S))

    def multiply(self, a: Mono, b: Mono) -> dict[Mono, Fraction]:
        """Product of dual basis elements: transpose of Delta with Koszul and twist signs."""
        ho = self.homological
        P = ho.maxweight
        if len(a) + len(b) > P:
            return {}
        s0 = _sgn(ho.degree(a) * ho.degree(b)) * self._twist(a) * self._twist(b)
        ab = normalize(a + b, ho.sdegs)[1] if normalize(a + b, ho.sdegs)[0] else None
        out: dict = {}
        if ab is None:
            return out
        # Delta(S) can contain a (x) b only for S = a.b up to sign
        c = ho.comultiply(ab).get((a, b), 0)
        if c:
            out[ab] = s0 * c * self._twist(ab)
        return out

    def _apply(self, S: Mono, mat, p2: int, n2: int) -> dict[Mono, Fraction]:
        ho = self.homological
        p, n = -len(S), -ho.degree(S)
        if not self.module.dim(p2, n2):
            return {}
        col = mat(p, n).column(self.module.weight(p).index(n, S))
        lab = self.module.weight(p2).labels[n2]
        return {lab[i]: v for i, v in col.items()}

    def eps(self, S: Mono) -> dict[Mono, Fraction]:
        """Mixed differential on the dual basis element labelled S (weight -len(S))."""
        return self._apply(S, self.module.eps, -len(S) - 1, -self.homological.degree(S) + 1)

    def d(self, S: Mono) -> dict[Mono, Fraction]:
        return self._apply(S, self.module.d, -len(S), -self.homological.degree(S) - 1)


def ce_cohomological(g: DgLieAlgebra, maxweight: int | None = None) -> CeCohomological:
    ho = ce_homological(g, maxweight)
    return CeCohomological(ho, dual_mixed(ho.module))


def derivation_failures(co: CeCohomological) -> list[tuple[str, Mono, Mono]]:
    """Graded Leibniz rule ``D(ab) = D(a) b + (-1)^{|a|} a D(b)`` for D = eps and d."""
    ho = co.homological
    bad = []
    P = ho.maxweight
    basis = [S for p in range(P + 1) for S in ho.basis(p)]

    def mult(x: dict, y: dict) -> dict:
        out: dict = {}
        for a, c in x.items():
            for b, c2 in y.items():
                for m, c3 in co.multiply(a, b).items():
                    _add(out, m, c * c2 * c3)
        return out

    for a in basis:
        for b in basis:
            # eps raises |weight| by one: stay strictly inside the window
            if len(a) + len(b) + 1 > P:
                continue
            deg_a = -ho.degree(a)
            for name, op in (("eps", co.eps), ("d", co.d)):
                lhs: dict = {}
                for m, c in co.multiply(a, b).items():
                    for m2, c2 in op(m).items():
                        _add(lhs, m2, c * c2)
                rhs = mult(op(a), {b: 1})
                for m, c in mult({a: 1}, op(b)).items():
                    _add(rhs, m, _sgn(deg_a) * c)
                if lhs != rhs:
                    bad.append((name, a, b))
    return bad


def _rep_module(m: Representation) -> MixedGradedModule:
    by_deg: dict[int, list[int]] = {}
    for i, dg in enumerate(m.degrees):
        by_deg.setdefault(dg, []).append(i)
    pos = {i: k for lst in by_deg.values() for k, i in enumerate(lst)}
    diffs = {}
    for n, lst in by_deg.items():
        ent = {}
        for col, i in enumerate(lst):
            for j, v in m.differential.get(i, {}).items():
                ent[(pos[j], col)] = v
        diffs[n] = RatMatrix(len(by_deg.get(n - 1, [])), len(lst), ent)
    return MixedGradedModule({0: ChainComplex({n: len(l) for n, l in by_deg.items()}, diffs, by_deg)})


def ce_coefficients(g: DgLieAlgebra, m: Representation, maxweight: int | None = None) -> MixedGradedModule:
    """CE^eps(g; M): weight -p is ``Hom(Sym^p(g[-1]), M)``.

    The internal differential comes from d_g and d_M; eps is the sum of the
    bracket term (as in the trivial case) and the action term.  For the
    trivial representation this equals ``ce_cohomological(g).module``.
    """
    v = validate_rep(g, m)
    if v is not None:
        raise RepInvalid(str(v))
    ho = ce_homological(g, maxweight)
    X = ho.module
    N = _rep_module(m)
    sd = ho.sdegs
    # which (S, x) have R as the rest after removing x: R -> list of (S, x, sign)
    up: dict[Mono, list] = {}
    for p in range(1, ho.maxweight + 1):
        for S in ho.basis(p):
            for s, x, rest in _sym_first_terms(S, sd):
                up.setdefault(rest, []).append((S, x, s))
    mpos = {i: (dg, k) for dg, lst in N.weight(0).labels.items() for k, i in enumerate(lst)}

    def extra(p, d, t):
        q, a, i, j = t
        R = X.weight(q).labels[a][i]
        jvec = N.weight(0).labels[a + d][j]
        out: dict = {}
        for S, x, s in up.get(R, ()):
            coef = _sgn(d) * s * _sgn(g.deg(x) * d)
            nS = ho.degree(S)
            iS = X.weight(q + 1).index(nS, S)
            for k, c in m.act({x: 1}, {jvec: 1}).items():
                dg, jk = mpos[k]
                _add(out, (q + 1, nS, iS, jk), coef * c)
        return out

    return _hom_module(X, N, extra_eps=extra)


# --------------------------------------------------------------------------
# functoriality

def check_lie_morphism(f: Mapping[int, Mapping[int, Fraction]], g: DgLieAlgebra, h: DgLieAlgebra) -> None:
    def fv(v):
        out: dict = {}
        for i, x in v.items():
            for k, y in f.get(i, {}).items():
                _add(out, k, x * y)
        return out

    for i in range(g.dim):
        for k in f.get(i, {}):
            if h.deg(k) != g.deg(i):
                raise NotLieMorphism(f"{g.names[i]} -> {h.names[k]} changes degree", (g.names[i],))
        if fv(g.d_gen(i)) != h.d(fv({i: 1})):
            raise NotLieMorphism(f"does not commute with d at {g.names[i]}", (g.names[i],))
    for i in range(g.dim):
        for j in range(g.dim):
            if fv(g.br_gen(i, j)) != h.bracket(fv({i: 1}), fv({j: 1})):
                raise NotLieMorphism(f"f[{g.names[i]},{g.names[j]}] != [f{g.names[i]},f{g.names[j]}]",
                                     (g.names[i], g.names[j]))


@dataclass
class CeMap:
    source: CeHomological
    target: CeHomological
    matrices: dict[tuple[int, int], RatMatrix]
    images: dict[Mono, dict[Mono, Fraction]]


def ce_map(f: Mapping[int, Mapping[int, Fraction]], g: DgLieAlgebra, h: DgLieAlgebra,
           maxweight: int | None = None) -> CeMap:
    """``Sym^p(f[-1])`` in each weight."""
    check_lie_morphism(f, g, h)
    P = g.dim if maxweight is None else maxweight
    src, tgt = ce_homological(g, P), ce_homological(h, P)
    images = {}
    for p in range(P + 1):
        for S in src.basis(p):
            acc: dict = {(): Fraction(1)}
            for x in S:
                nxt: dict = {}
                for mono, c in acc.items():
                    for y, c2 in f.get(x, {}).items():
                        s, m = normalize(mono + (y,), tgt.sdegs)
                        if s:
                            _add(nxt, m, s * c * c2)
                acc = nxt
            images[S] = acc
    mats = {}
    for p in range(P + 1):
        sw, tw = src.module.weight(p), tgt.module.weight(p)
        for n in sw.dims:
            ent = {}
            for col, S in enumerate(sw.labels[n]):
                for m, c in images[S].items():
                    ent[(tw.index(n, m), col)] = c
            mats[(p, n)] = RatMatrix(tw.dim(n), sw.dim(n), ent)
    return CeMap(src, tgt, mats, images)


def ce_map_failures(phi: CeMap) -> list[tuple[str, int, int]]:
    """Cells where the induced map fails to commute with d, eps or Delta."""
    src, tgt = phi.source.module, phi.target.module
    bad = []

    def mat(p, n):
        m = phi.matrices.get((p, n))
        return m if m is not None else RatMatrix.zero(tgt.dim(p, n), src.dim(p, n))

    for p, n in src.cells():
        if not (mat(p, n - 1) @ src.d(p, n) == tgt.d(p, n) @ mat(p, n)):
            bad.append(("d", p, n))
        if p >= 1 and not (mat(p - 1, n + 1) @ src.eps(p, n) == tgt.eps(p, n) @ mat(p, n)):
            bad.append(("eps", p, n))
    for S, img in phi.images.items():
        lhs: dict = {}
        for m, c in img.items():
            for key, c2 in phi.target.comultiply(m).items():
                _add(lhs, key, c * c2)
        rhs: dict = {}
        for (a, b), c in phi.source.comultiply(S).items():
            for ma, ca in phi.images[a].items():
                for mb, cb in phi.images[b].items():
                    _add(rhs, (ma, mb), c * ca * cb)
        if lhs != rhs:
            bad.append(("Delta", len(S), phi.source.degree(S)))
    return bad


# --------------------------------------------------------------------------
# structural checks

@dataclass
class CheckResult:
    ok: bool
    mismatches: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def monoidality_check(g: DgLieAlgebra, h: DgLieAlgebra, maxweight: int = 4) -> CheckResult:
    """Compare CE(g x h) with CE(g) (x) CE(h) through the monomial bijection S = (S_g)(S_h)."""
    gh = product_lie(g, h)
    A = ce_homological(gh, maxweight)
    G, H = ce_homological(g, maxweight), ce_homological(h, maxweight)
    T = tensor_mixed(G.module, H.module)
    off = g.dim
    bad = []

    def split(S):
        a = tuple(i for i in S if i < off)
        b = tuple(i - off for i in S if i >= off)
        return a, b

    def to_tensor_label(S):
        a, b = split(S)
        return (len(a), (a, b))

    for p in range(maxweight + 1):
        wa, wt = A.module.weight(p), T.weight(p)
        if wa.dims != wt.dims:
            bad.append(("dims", p, dict(wa.dims), dict(wt.dims)))
            continue
        for n in wa.dims:
            perm = [wt.index(n, to_tensor_label(S)) for S in wa.labels[n]]
            # d inside the weight
            if n - 1 in wa.dims:
                permt = [wt.index(n - 1, to_tensor_label(S)) for S in wa.labels[n - 1]]
                Ma = wa.d(n)
                Mt = wt.d(n)
                if Mt.submatrix(permt, perm) != Ma:
                    bad.append(("d", p, n))
            if p >= 1 and n + 1 in A.module.weight(p - 1).dims:
                wl = A.module.weight(p - 1)
                permt = [T.weight(p - 1).index(n + 1, to_tensor_label(S)) for S in wl.labels[n + 1]]
                if T.eps(p, n).submatrix(permt, perm) != A.module.eps(p, n):
                    bad.append(("eps", p, n))
    # Delta of the product against the tensor coalgebra (with Koszul swap of middle factors)
    for p in range(maxweight + 1):
        for S in A.basis(p):
            lhs: dict = {}
            for (x, y), c in A.comultiply(S).items():
                _add(lhs, (split(x), split(y)), c)
            a, b = split(S)
            rhs: dict = {}
            for (a1, a2), c in G.comultiply(a).items():
                for (b1, b2), c2 in H.comultiply(b).items():
                    s = _sgn(G.degree(a2) * H.degree(b1))
                    _add(rhs, ((a1, b1), (a2, b2)), s * c * c2)
            if lhs != rhs:
                bad.append(("Delta", S))
    return CheckResult(not bad, bad)


def duality_check(g: DgLieAlgebra, maxweight: int | None = None) -> CheckResult:
    co = ce_cohomological(g, maxweight)
    ho = co.homological
    bad = []
    if co.module != dual_mixed(ho.module):
        bad.append(("module", "CE^eps != dual(CE_eps)"))
    # the product is Delta transposed: <a.b, S> = +-<a (x) b, Delta S>
    for p in range(ho.maxweight + 1):
        for S in ho.basis(p):
            delta = ho.comultiply(S)
            for (a, b), c in delta.items():
                prod = co.multiply(a, b).get(S, 0)
                expect = c * _sgn(ho.degree(a) * ho.degree(b)) * co._twist(a) * co._twist(b) * co._twist(S)
                if prod != expect:
                    bad.append(("product", a, b, S))
    return CheckResult(not bad, bad)


# --------------------------------------------------------------------------
# Betti numbers

def window_faithful(g: DgLieAlgebra, maxweight: int) -> bool:
    """Every ``Sym^p(g[-1])`` with p > maxweight vanishes."""
    if any(d % 2 for d in g.degrees):
        return False
    return maxweight >= g.dim


@dataclass
class BettiReport:
    side: str
    maxweight: int
    betti: dict[int, int]
    faithful: bool
    warnings: list[str] = field(default_factory=list)


def betti(g: DgLieAlgebra, side: str = "cohom", coefficients: Representation | None = None,
          maxweight: int | None = None, degrees: tuple[int, int] | None = None) -> BettiReport:
    """Homology of the Tate realization; cohomological side is reported in cohomological degrees."""
    P = g.dim if maxweight is None else maxweight
    warn = []
    faithful = window_faithful(g, P)
    if not faithful:
        msg = f"weights above {P} are truncated and Sym(g[-1]) does not vanish there"
        warn.append(msg)
        warnings.warn(msg, WindowUnfaithful, stacklevel=2)
    if side == "hom":
        if coefficients is not None:
            raise ValueError("coefficients are only supported on the cohomological side")
        tot = tate_total(ce_homological(g, P).module, -P)
        h = homology(tot)
    elif side == "cohom":
        if coefficients is None:
            mod = ce_cohomological(g, P).module
        else:
            mod = ce_coefficients(g, coefficients, P)
        tot = tate_total(mod, 0)
        h = {-n: b for n, b in homology(tot).items()}
    else:
        raise ValueError(f"side must be 'hom' or 'cohom', not {side!r}")
    if degrees is not None:
        lo, hi = degrees
        h = {n: h.get(n, 0) for n in range(lo, hi + 1)}
    else:
        h = dict(sorted(h.items()))
    return BettiReport(side, P, h, faithful, warn)


def validate_all(ce: CeHomological) -> Violation | None:
    return validate_mixed(ce.module)


# --------------------------------------------------------------------------
# the worked aff(1) example

def aff1_example_check(D: int = 3, P: int = 2, max_u: int = 2) -> dict:
    """Compare eps(u (x) e1bar e2bar) in the enveloping cone of aff(1) with
    ``u.e1 (x) e2bar - u.e2 (x) e1bar - u (x) e1bar`` for every PBW word u with len(u) <= max_u,
    and the weight-2 eps of CE_eps(aff(1)) with ``e1 e2 -> e1bar``."""
    from .enveloping import u_cone_mixed
    from .lie import aff1

    g = aff1()
    uc = u_cone_mixed(g, D, P)
    pb = uc.truncation
    rows = []
    for u in pb.basis:
        if len(u) > max_u:
            continue
        expect: dict = {}
        for m, c in pb.normal_form(u + (0,)).items():
            _add(expect, (m, (1,)), c)
        for m, c in pb.normal_form(u + (1,)).items():
            _add(expect, (m, (0,)), -c)
        _add(expect, (u, (0,)), Fraction(-1))
        got = uc.eps_of(2, (u, (0, 1)))
        rows.append({"u": [g.names[i] for i in u], "expected": expect, "actual": got, "ok": got == expect})
    ho = ce_homological(g, 2)
    eps2 = ho.module.eps(2, ho.degree((0, 1)))
    ce_ok = eps2.to_dense() == [[1], [0]]
    return {"rows": rows, "ce_eps2": eps2.to_dense(), "ce_ok": ce_ok,
            "ok": ce_ok and all(r["ok"] for r in rows)}
