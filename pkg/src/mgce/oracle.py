"""Classical Chevalley-Eilenberg complexes built directly from structure constants.

These are deliberately independent of the mixed graded machinery: no weights,
no Tate totalization, their own sign bookkeeping.  Used as test oracles.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .complex import ChainComplex, homology
from .lie import DgLieAlgebra, Representation
from .linalg import RatMatrix


def _wedge(word: list[int]) -> tuple[int, tuple[int, ...]]:
    # bubble sort counting swaps; repeated letters kill the wedge
    w = list(word)
    sign = 1
    for a in range(len(w)):
        for b in range(len(w) - 1 - a):
            if w[b] > w[b + 1]:
                w[b], w[b + 1] = w[b + 1], w[b]
                sign = -sign
    if len(set(w)) < len(w):
        return 0, ()
    return sign, tuple(w)


def exterior_complex(g: DgLieAlgebra) -> ChainComplex:
    """``Lambda^p g`` in degree p with ``d(x_1..x_p) = sum_{i<j} (-1)^{i+j} [x_i,x_j] x_1..^..^..x_p``."""
    if not g.is_discrete():
        raise ValueError("exterior_complex needs an ungraded Lie algebra")
    n = g.dim
    bases = {p: list(combinations(range(n), p)) for p in range(n + 1)}
    pos = {p: {m: k for k, m in enumerate(b)} for p, b in bases.items()}
    diffs = {}
    for p in range(2, n + 1):
        ent: dict = {}
        for col, m in enumerate(bases[p]):
            for i in range(p):
                for j in range(i + 1, p):
                    rest = [m[k] for k in range(p) if k not in (i, j)]
                    # positions counted from 1 in the usual formula
                    s0 = -1 if (i + j) % 2 else 1
                    for z, c in g.br_gen(m[i], m[j]).items():
                        s, w = _wedge([z] + rest)
                        if s:
                            key = (pos[p - 1][w], col)
                            ent[key] = ent.get(key, 0) + s0 * s * c
        diffs[p] = RatMatrix(len(bases[p - 1]), len(bases[p]), ent)
    return ChainComplex({p: len(b) for p, b in bases.items()}, diffs, bases)


def cochain_complex(g: DgLieAlgebra, m: Representation | None = None) -> ChainComplex:
    """``Hom(Lambda^p g, M)`` placed in homological degree -p.

    ``(d f)(x_0..x_p) = sum_i (-1)^i x_i f(..^x_i..) + sum_{i<j} (-1)^{i+j} f([x_i,x_j], ..^..^..)``.
    Basis of degree -p: pairs (wedge monomial, index of a basis vector of M).
    """
    if not g.is_discrete():
        raise ValueError("cochain_complex needs an ungraded Lie algebra")
    if m is not None and (any(m.degrees) or m.differential):
        raise ValueError("cochain_complex needs an ungraded representation")
    n = g.dim
    md = 1 if m is None else m.dim
    bases = {p: [(w, v) for w in combinations(range(n), p) for v in range(md)] for p in range(n + 1)}
    pos = {p: {t: k for k, t in enumerate(b)} for p, b in bases.items()}

    def act(x, v):
        if m is None:
            return {}
        return m.act({x: 1}, {v: 1})

    diffs = {}
    for p in range(n):
        # cochain differential C^p -> C^{p+1}, i.e. degree -p -> -p-1
        ent: dict = {}
        for row, (w, v) in enumerate(bases[p + 1]):
            # evaluate d(f) on x_0..x_p = w for every elementary f = (w', v')
            for i in range(p + 1):
                rest = w[:i] + w[i + 1:]
                # action term: x_i f(rest); f = (rest, v'), contributes to component v
                s0 = -1 if i % 2 else 1
                for vp in range(md):
                    for v2, c in act(w[i], vp).items():
                        if v2 == v:
                            col = pos[p][(rest, vp)]
                            ent[(row, col)] = ent.get((row, col), 0) + s0 * c
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    s0 = -1 if (i + j) % 2 else 1
                    rest = [w[k] for k in range(p + 1) if k not in (i, j)]
                    for z, c in g.br_gen(w[i], w[j]).items():
                        s, mono = _wedge([z] + rest)
                        if s:
                            col = pos[p][(mono, v)]
                            ent[(row, col)] = ent.get((row, col), 0) + s0 * s * c
        diffs[-p] = RatMatrix(len(bases[p + 1]), len(bases[p]), ent)
    return ChainComplex({-p: len(b) for p, b in bases.items()}, diffs, {-p: b for p, b in bases.items()})


def cohomology_dims(g: DgLieAlgebra, m: Representation | None = None) -> dict[int, int]:
    h = homology(cochain_complex(g, m))
    return {p: h.get(-p, 0) for p in range(g.dim + 1)}


def homology_dims(g: DgLieAlgebra) -> dict[int, int]:
    if g.is_discrete():
        h = homology(exterior_complex(g))
        return {p: h.get(p, 0) for p in range(g.dim + 1)}
    return homology(graded_complex(g, g.dim))


# --------------------------------------------------------------------------
# graded inputs: Sym(g[1]) with d = d_int + d_bracket, truncated in word length

def _gsort(word: list[int], sd: list[int]) -> tuple[int, tuple[int, ...]]:
    w = list(word)
    sign = 1
    for a in range(len(w)):
        for b in range(len(w) - 1 - a):
            if w[b] > w[b + 1]:
                if sd[w[b]] % 2 and sd[w[b + 1]] % 2:
                    sign = -sign
                w[b], w[b + 1] = w[b + 1], w[b]
    for a, b in zip(w, w[1:]):
        if a == b and sd[a] % 2:
            return 0, ()
    return sign, tuple(w)


def graded_complex(g: DgLieAlgebra, maxlen: int) -> ChainComplex:
    """Sym^{<=maxlen}(g[1]) in total degree ``sum(|x_i| + 1)``.

    ``d(sx_1 .. sx_p) = sum_i (-1)^{e_i} s(dx_i) .. + sum_{i<j} (-1)^{e_ij} (-1)^{|x_i|} s[x_i,x_j] ..``
    where e_i is the Koszul sign of moving past the earlier factors.  Words of
    length maxlen + 1 are not built, so the top degree is not faithful when
    Sym(g[1]) does not vanish there.
    """
    sd = [d + 1 for d in g.degrees]
    n = g.dim
    monos = []
    for p in range(maxlen + 1):
        for m in combinations_with_replacement(range(n), p):
            if all(not (a == b and sd[a] % 2) for a, b in zip(m, m[1:])):
                monos.append(m)
    by_deg: dict[int, list] = {}
    for m in monos:
        by_deg.setdefault(sum(sd[i] for i in m), []).append(m)
    pos = {k: {m: i for i, m in enumerate(v)} for k, v in by_deg.items()}

    def front_sign(m, idxs):
        # sign of moving the factors at idxs (in order) to the front
        e = 0
        for t, i in enumerate(idxs):
            e += sd[m[i]] * sum(sd[m[k]] for k in range(i) if k not in idxs[:t] and k not in idxs[t:])
        return -1 if e % 2 else 1

    def dmono(m):
        out: dict = {}
        p = len(m)
        for i in range(p):
            s = front_sign(m, (i,))
            rest = list(m[:i] + m[i + 1:])
            for z, c in g.d_gen(m[i]).items():
                s2, w = _gsort([z] + rest, sd)
                if s2:
                    out[w] = out.get(w, 0) - s * s2 * c
            for j in range(i + 1, p):
                s = front_sign(m, (i, j)) * (-1 if g.deg(m[i]) % 2 else 1)
                rest = [m[k] for k in range(p) if k not in (i, j)]
                for z, c in g.br_gen(m[i], m[j]).items():
                    s2, w = _gsort([z] + rest, sd)
                    if s2:
                        out[w] = out.get(w, 0) + s * s2 * c
        return {k: v for k, v in out.items() if v}

    diffs = {}
    for deg, lst in by_deg.items():
        tgt = pos.get(deg - 1, {})
        ent = {}
        for col, m in enumerate(lst):
            for w, c in dmono(m).items():
                if w in tgt:
                    ent[(tgt[w], col)] = Fraction(c)
        diffs[deg] = RatMatrix(len(tgt), len(lst), ent)
    return ChainComplex({k: len(v) for k, v in by_deg.items()}, diffs, by_deg)


# --------------------------------------------------------------------------
# the alternative bracket placement for the Koszul resolution

def koszul_variant_defect(g: DgLieAlgebra, D: int, n: int = 3) -> int:
    """Number of nonzero entries of d o d on ``U_{<=D-n} (x) Lambda^n`` when the
    bracket [g_i, g_j] replaces g_j in place instead of going to the front."""
    from .enveloping import pbw_truncate

    pb = pbw_truncate(g, D)

    def d(elem):
        out: dict = {}
        for (u, lam), c in elem.items():
            k = len(lam)
            for i in range(k):
                s = 1 if i % 2 == 0 else -1
                nf = pb.normal_form(u + (lam[i],))
                rest = lam[:i] + lam[i + 1:]
                for u2, c2 in nf.items():
                    key = (u2, rest)
                    out[key] = out.get(key, 0) + s * c * c2
            for i in range(k):
                for j in range(i + 1, k):
                    s0 = 1 if (i + j) % 2 == 0 else -1
                    for z, c2 in g.br_gen(lam[i], lam[j]).items():
                        word = list(lam)
                        word[j] = z
                        del word[i]
                        s, w = _wedge(word)
                        if s:
                            key = (u, w)
                            out[key] = out.get(key, 0) + s0 * s * c * c2
        return {k: v for k, v in out.items() if v}

    bad = 0
    for u in pb.basis:
        if len(u) + n > D:
            continue
        for lam in combinations(range(g.dim), n):
            bad += len(d(d({(u, lam): Fraction(1)})))
    return bad
