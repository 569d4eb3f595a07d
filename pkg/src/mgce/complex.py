"""Finite chain complexes of rational vector spaces (homological grading).

Sign conventions used throughout the package:

* shift: ``(C[k])_n = C_{n-k}`` with differential ``(-1)^k d``;
* tensor: ``d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy``;
* dual: ``(C^v)_n = (C_{-n})^*`` with differential ``(-1)^{n(n-1)/2} d^T`` in
  degree ``n``, which makes dualizing a strict involution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping, Sequence

from .linalg import RatMatrix, ShapeMismatch, homology_dim


def koszul(*exps: int) -> int:
    """(-1) raised to the sum of the given exponents."""
    return -1 if sum(exps) % 2 else 1


def dual_sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}: {self.detail}".rstrip(": ")


@dataclass(frozen=True)
class ChainComplex:
    """Finitely supported complex; ``diffs[n]`` maps degree ``n`` to ``n - 1``.

    ``labels[n]`` optionally names the basis of degree ``n`` (used to build
    canonical bijections between isomorphic constructions).
    """
    dims: Mapping[int, int]
    diffs: Mapping[int, RatMatrix] = field(default_factory=dict)
    labels: Mapping[int, Sequence[Hashable]] | None = None

    def __post_init__(self):
        dims = {n: d for n, d in self.dims.items() if d}
        diffs = {}
        for n, m in self.diffs.items():
            if m.is_zero():
                continue
            want = (dims.get(n - 1, 0), dims.get(n, 0))
            if m.shape != want:
                raise ShapeMismatch(f"d_{n} has shape {m.shape}, expected {want}")
            diffs[n] = m
        object.__setattr__(self, "dims", dict(sorted(dims.items())))
        object.__setattr__(self, "diffs", diffs)
        if self.labels is not None:
            labels = {n: tuple(self.labels.get(n, ())) for n in dims}
            for n, lab in labels.items():
                if len(lab) != dims[n]:
                    raise ShapeMismatch(f"{len(lab)} labels for a {dims[n]}-dim degree {n}")
            object.__setattr__(self, "labels", labels)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> RatMatrix:
        m = self.diffs.get(n)
        if m is None:
            return RatMatrix.zero(self.dim(n - 1), self.dim(n))
        return m

    def degrees(self) -> list[int]:
        return list(self.dims)

    def label(self, n: int, i: int) -> Any:
        return self.labels[n][i] if self.labels is not None else i

    def index(self, n: int, lab: Hashable) -> int:
        return self.labels[n].index(lab)

    def support(self) -> tuple[int, int] | None:
        if not self.dims:
            return None
        return min(self.dims), max(self.dims)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.dims.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.dims == other.dims and self.diffs == other.diffs

    def __hash__(self):
        return hash(tuple(self.dims.items()))

    def __repr__(self) -> str:
        return f"ChainComplex(dims={dict(self.dims)})"


def zero_complex() -> ChainComplex:
    return ChainComplex({})


def point(degree: int = 0, dim: int = 1) -> ChainComplex:
    """``Q^dim`` concentrated in one degree."""
    return ChainComplex({degree: dim})


def validate_complex(c: ChainComplex) -> Violation | None:
    """None if d^2 = 0 everywhere, otherwise the first failing (degree, row, col)."""
    for n in sorted(c.diffs):
        if n - 1 not in c.diffs:
            continue
        sq = c.d(n - 1) @ c.d(n)
        if not sq.is_zero():
            (i, j), v = min(sq.entries.items())
            return Violation("d^2 != 0", (n, i, j), f"entry {v}")
    return None


def homology(c: ChainComplex) -> dict[int, int]:
    """Betti numbers of every supported degree."""
    out = {}
    for n in c.dims:
        out[n] = homology_dim(c.d(n + 1), c.d(n))
    return out


def shift(c: ChainComplex, k: int) -> ChainComplex:
    s = -1 if k % 2 else 1
    labels = None if c.labels is None else {n + k: lab for n, lab in c.labels.items()}
    return ChainComplex({n + k: d for n, d in c.dims.items()},
                        {n + k: m.scale(s) for n, m in c.diffs.items()},
                        labels)


def direct_sum_complex(parts: Sequence[ChainComplex], tags: Sequence[Hashable] | None = None) -> ChainComplex:
    """Block sum; degree-n basis is the concatenation of the parts' bases.

    With ``tags`` the labels become ``(tag, part_label)``.
    """
    degrees = sorted({n for c in parts for n in c.dims})
    dims = {n: sum(c.dim(n) for c in parts) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = {(k, k): c.d(n) for k, c in enumerate(parts)}
        diffs[n] = RatMatrix.block([c.dim(n - 1) for c in parts], [c.dim(n) for c in parts], blocks)
    labels = None
    if tags is not None:
        labels = {n: [(t, c.label(n, i)) for t, c in zip(tags, parts) for i in range(c.dim(n))]
                  for n in degrees}
    return ChainComplex(dims, diffs, labels)


def tensor_basis(a: ChainComplex, b: ChainComplex) -> dict[int, list[tuple[int, int, int]]]:
    """Degree n -> list of (i, x, y): x in a_i, y in b_{n-i}; ordered by i, x, y."""
    out: dict[int, list[tuple[int, int, int]]] = {}
    for i, da in a.dims.items():
        for j, db in b.dims.items():
            out.setdefault(i + j, []).extend((i, x, y) for x in range(da) for y in range(db))
    for n in out:
        out[n].sort()
    return out


def tensor_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    basis = tensor_basis(a, b)
    pos = {n: {t: k for k, t in enumerate(lst)} for n, lst in basis.items()}
    acols = {n: a.d(n).col_dicts() for n in a.dims}
    bcols = {n: b.d(n).col_dicts() for n in b.dims}
    diffs = {}
    for n, lst in basis.items():
        target = pos.get(n - 1, {})
        ent = {}
        for col, (i, x, y) in enumerate(lst):
            j = n - i
            for x2, v in acols[i][x].items():
                r = target[(i - 1, x2, y)]
                ent[(r, col)] = ent.get((r, col), 0) + v
            s = -1 if i % 2 else 1
            for y2, v in bcols[j][y].items():
                r = target[(i, x, y2)]
                ent[(r, col)] = ent.get((r, col), 0) + s * v
        diffs[n] = RatMatrix(len(basis.get(n - 1, [])), len(lst), ent)
    labels = {n: [(a.label(i, x), b.label(n - i, y)) for (i, x, y) in lst]
              for n, lst in basis.items()}
    return ChainComplex({n: len(lst) for n, lst in basis.items()}, diffs, labels)


def dual_complex(c: ChainComplex) -> ChainComplex:
    dims = {-n: d for n, d in c.dims.items()}
    diffs = {}
    for n in dims:
        # d^v_n : (C_{-n})^* -> (C_{-n+1})^*
        src = c.d(-n + 1)
        diffs[n] = src.T.scale(dual_sign(n))
    labels = None if c.labels is None else {-n: lab for n, lab in c.labels.items()}
    return ChainComplex(dims, diffs, labels)


def complexes_equal(a: ChainComplex, b: ChainComplex) -> bool:
    """Equal dims and differentials in every degree (labels ignored)."""
    return a == b
