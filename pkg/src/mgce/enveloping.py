"""Truncated PBW models of universal enveloping algebras.

Includes the classical Koszul resolution ``U(g) (x) Lambda(g)`` of the trivial
module and the mixed graded enveloping algebra of the cone,
``U(g) (x) Sym^p(g[-1])`` in weight p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .complex import ChainComplex
from .lie import DgLieAlgebra, validate_lie
from .linalg import RatMatrix
from .mixed import MixedGradedModule
from .symmetric import Mono, move_to_front_sign, normalize, sym_basis

Elem = dict[Mono, Fraction]


class NotDiscrete(ValueError):
    pass


class NotValidated(ValueError):
    pass


def _add(acc: dict, key, v) -> None:
    w = acc.get(key, 0) + v
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


def _pbw_key(m: Mono):
    return (len(m), m)


class PbwTruncation:
    """PBW basis of U(g) up to word length ``max_word``.

    Words are rewritten with ``xy = (-1)^{|x||y|} yx + [x, y]`` and, for odd x,
    ``xx = 1/2 [x, x]``.  Normal forms are exact; only the basis is truncated.
    """

    def __init__(self, algebra: DgLieAlgebra, max_word: int):
        self.algebra = algebra
        self.max_word = max_word
        self._nf: dict[Mono, Elem] = {}
        degs = algebra.degrees
        basis = [()]
        for k in range(1, max_word + 1):
            for m in combinations_with_replacement(range(algebra.dim), k):
                if all(not (a == b and degs[a] % 2) for a, b in zip(m, m[1:])):
                    basis.append(m)
        self.basis: list[Mono] = sorted(basis, key=_pbw_key)

    def degree(self, m: Mono) -> int:
        return sum(self.algebra.degrees[i] for i in m)

    def normal_form(self, word: Mono) -> Elem:
        word = tuple(word)
        hit = self._nf.get(word)
        if hit is not None:
            return hit
        g = self.algebra
        out: Elem = {}
        for k in range(len(word) - 1):
            x, y = word[k], word[k + 1]
            if x > y or (x == y and g.deg(x) % 2):
                pre, post = word[:k], word[k + 2:]
                if x > y:
                    s = -1 if (g.deg(x) * g.deg(y)) % 2 else 1
                    for m, c in self.normal_form(pre + (y, x) + post).items():
                        _add(out, m, s * c)
                    for z, c in g.br_gen(x, y).items():
                        for m, c2 in self.normal_form(pre + (z,) + post).items():
                            _add(out, m, c * c2)
                else:
                    for z, c in g.br_gen(x, x).items():
                        for m, c2 in self.normal_form(pre + (z,) + post).items():
                            _add(out, m, Fraction(c) / 2 * c2)
                break
        else:
            out = {word: Fraction(1)}
        self._nf[word] = out
        return out

    def multiply(self, a: Elem, b: Elem) -> Elem:
        out: Elem = {}
        for m1, x in a.items():
            for m2, y in b.items():
                for m, c in self.normal_form(m1 + m2).items():
                    _add(out, m, x * y * c)
        return out

    def product(self, u: Mono, v: Mono) -> tuple[Elem, bool]:
        """Product of basis monomials and whether it overflows the truncation."""
        r = self.normal_form(u + v)
        return r, any(len(m) > self.max_word for m in r)

    def d(self, u: Mono) -> Elem:
        """Differential induced by d_g, as a derivation."""
        g = self.algebra
        out: Elem = {}
        sgn = 0
        for k, x in enumerate(u):
            s = -1 if sgn % 2 else 1
            for z, c in g.d_gen(x).items():
                for m, c2 in self.normal_form(u[:k] + (z,) + u[k + 1:]).items():
                    _add(out, m, s * c * c2)
            sgn += g.deg(x)
        return out

    def associativity_failures(self, max_len: int | None = None) -> list[tuple[Mono, Mono, Mono]]:
        lim = self.max_word if max_len is None else max_len
        short = [m for m in self.basis if len(m) <= lim]
        bad = []
        for a in short:
            for b in short:
                ab = self.normal_form(a + b)
                for c in short:
                    left = self.multiply(ab, {c: Fraction(1)})
                    right = self.multiply({a: Fraction(1)}, self.normal_form(b + c))
                    if left != right:
                        bad.append((a, b, c))
        return bad


def pbw_truncate(g: DgLieAlgebra, D: int) -> PbwTruncation:
    v = validate_lie(g)
    if v is not None:
        raise NotValidated(str(v))
    return PbwTruncation(g, D)


# --------------------------------------------------------------------------
# classical resolution

def _wedge_normal(word, n_sign=1):
    """Sort a wedge word of degree-one letters: (sign, tuple) or (0, ())."""
    w = list(word)
    if len(set(w)) != len(w):
        return 0, ()
    sign = n_sign
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    return sign, tuple(w)


@dataclass
class KoszulResolution:
    """Window ``{u (x) lambda : len(u) + |lambda| <= D, |lambda| <= P}`` of V(g)."""
    truncation: PbwTruncation
    max_ext: int
    window: int
    complex: ChainComplex
    augmentation: RatMatrix = field(default=None)

    def basis(self, n: int) -> list[tuple[Mono, Mono]]:
        return list(self.complex.labels.get(n, ()))


def koszul_resolution(g: DgLieAlgebra, D: int, P: int | None = None) -> KoszulResolution:
    if not g.is_discrete():
        raise NotDiscrete("the classical resolution needs all generators in degree 0")
    pbw = pbw_truncate(g, D)
    P = g.dim if P is None else min(P, g.dim)
    basis: dict[int, list[tuple[Mono, Mono]]] = {}
    for n in range(P + 1):
        lam_all = list(combinations(range(g.dim), n))
        basis[n] = [(u, lam) for u in pbw.basis if len(u) + n <= D for lam in lam_all]
    pos = {n: {t: k for k, t in enumerate(b)} for n, b in basis.items()}
    diffs = {}
    for n in range(1, P + 1):
        ent = {}
        for col, (u, lam) in enumerate(basis[n]):
            terms: dict = {}
            for i in range(n):
                s = 1 if i % 2 == 0 else -1  # (-1)^{i+1} with 1-based i
                rest = lam[:i] + lam[i + 1:]
                for m, c in pbw.normal_form(u + (lam[i],)).items():
                    _add(terms, (m, rest), s * c)
            for i in range(n):
                for j in range(i + 1, n):
                    s = -1 if (i + j) % 2 else 1  # (-1)^{(i+1)+(j+1)}
                    rest = lam[:i] + lam[i + 1:j] + lam[j + 1:]
                    for z, c in g.br_gen(lam[i], lam[j]).items():
                        s2, w = _wedge_normal((z,) + rest)
                        if s2:
                            _add(terms, (u, w), s * s2 * c)
            for key, v in terms.items():
                ent[(pos[n - 1][key], col)] = v
        diffs[n] = RatMatrix(len(basis[n - 1]), len(basis[n]), ent)
    cx = ChainComplex({n: len(b) for n, b in basis.items()}, diffs, basis)
    aug = RatMatrix(1, len(basis[0]), {(0, k): 1 for k, (u, _) in enumerate(basis[0]) if u == ()})
    return KoszulResolution(pbw, P, D, cx, aug)


# --------------------------------------------------------------------------
# enveloping algebra of the cone

@dataclass
class UConeMixed:
    """Weight p = ``PBW_{<= D + P - p} (x) Sym^p(g[-1])`` for 0 <= p <= P.

    Lower weights carry longer words so that the window is closed under eps,
    which raises word length by one while lowering the weight by one.
    Labels are ``(u, S)``.
    """
    truncation: PbwTruncation
    D: int
    P: int
    module: MixedGradedModule
    sdegs: tuple[int, ...]

    def index(self, p: int, label) -> tuple[int, int]:
        u, S = label
        n = self.truncation.degree(u) + sum(self.sdegs[i] for i in S)
        return n, self.module.weight(p).index(n, label)

    def eps_of(self, p: int, label) -> dict:
        n, k = self.index(p, label)
        if not self.module.dim(p - 1, n + 1):
            return {}
        col = self.module.eps(p, n).column(k)
        lab = self.module.weight(p - 1).labels[n + 1]
        return {lab[i]: v for i, v in col.items()}


def sym_shifted_degrees(g: DgLieAlgebra) -> tuple[int, ...]:
    return tuple(d - 1 for d in g.degrees)


def _sym_d(g: DgLieAlgebra, S: Mono, sdegs) -> dict[Mono, Fraction]:
    """Internal differential on Sym(g[-1]): ``bar x -> -bar(dx)`` as a derivation."""
    out: dict[Mono, Fraction] = {}
    acc = 0
    for k, x in enumerate(S):
        s = -1 if acc % 2 else 1
        for z, c in g.d_gen(x).items():
            s2, m = normalize(S[:k] + (z,) + S[k + 1:], sdegs)
            if s2:
                _add(out, m, -s * s2 * c)
        acc += sdegs[x]
    return out


def _sym_first_terms(S: Mono, sdegs) -> list[tuple[int, int, Mono]]:
    """(sign, x, rest) with ``S = sign * bar x . rest`` for every position."""
    return [(move_to_front_sign(S, (i,), sdegs), S[i], S[:i] + S[i + 1:]) for i in range(len(S))]


def _sym_bracket_terms(g: DgLieAlgebra, S: Mono, sdegs) -> dict[Mono, Fraction]:
    """Bracket part of eps: ``bar x bar y R -> -(-1)^{|x|} bar[x, y] R``."""
    out: dict[Mono, Fraction] = {}
    n = len(S)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = S[i], S[j]
            br = g.br_gen(x, y)
            if not br:
                continue
            s = move_to_front_sign(S, (i, j), sdegs) * (1 if g.deg(x) % 2 else -1)
            rest = S[:i] + S[i + 1:j] + S[j + 1:]
            for z, c in br.items():
                s2, m = normalize((z,) + rest, sdegs)
                if s2:
                    _add(out, m, s * s2 * c)
    return out


def u_cone_mixed(g: DgLieAlgebra, D: int, P: int | None = None) -> UConeMixed:
    v = validate_lie(g)
    if v is not None:
        raise NotValidated(str(v))
    P = g.dim if P is None else P
    pbw = PbwTruncation(g, D + P)
    sdegs = sym_shifted_degrees(g)
    bases: dict[int, dict[int, list]] = {}
    for p in range(P + 1):
        syms = sym_basis(sdegs, p)
        by_deg: dict[int, list] = {}
        for u in pbw.basis:
            if len(u) > D + P - p:
                continue
            for S in syms:
                by_deg.setdefault(pbw.degree(u) + sum(sdegs[i] for i in S), []).append((u, S))
        for lst in by_deg.values():
            lst.sort(key=lambda t: (_pbw_key(t[0]), t[1]))
        if by_deg:
            bases[p] = by_deg
    pos = {p: {n: {t: k for k, t in enumerate(l)} for n, l in b.items()} for p, b in bases.items()}

    weights, mixed = {}, {}
    for p, b in bases.items():
        diffs = {}
        for n, lst in b.items():
            tgt = pos[p].get(n - 1, {})
            ent = {}
            for col, (u, S) in enumerate(lst):
                terms: dict = {}
                for m, c in pbw.d(u).items():
                    _add(terms, (m, S), c)
                su = -1 if pbw.degree(u) % 2 else 1
                for m, c in _sym_d(g, S, sdegs).items():
                    _add(terms, (u, m), su * c)
                for key, c in terms.items():
                    ent[(tgt[key], col)] = c
            diffs[n] = RatMatrix(len(tgt), len(lst), ent)
        weights[p] = ChainComplex({n: len(l) for n, l in b.items()}, diffs, b)
        if p == 0:
            continue
        for n, lst in b.items():
            tgt = pos[p - 1].get(n + 1, {})
            ent = {}
            for col, (u, S) in enumerate(lst):
                su = -1 if pbw.degree(u) % 2 else 1
                terms: dict = {}
                for s, x, rest in _sym_first_terms(S, sdegs):
                    for m, c in pbw.normal_form(u + (x,)).items():
                        _add(terms, (m, rest), su * s * c)
                for m, c in _sym_bracket_terms(g, S, sdegs).items():
                    _add(terms, (u, m), su * c)
                for key, c in terms.items():
                    ent[(tgt[key], col)] = c
            if ent:
                mixed[(p, n)] = RatMatrix(len(tgt), len(lst), ent)
    return UConeMixed(pbw, D, P, MixedGradedModule(weights, mixed), sdegs)


def left_multiply(uc: UConeMixed, v: Mono, p: int, label) -> dict:
    """``v . (u (x) S) = (v u) (x) S``."""
    u, S = label
    return {(m, S): c for m, c in uc.truncation.normal_form(v + u).items()}
