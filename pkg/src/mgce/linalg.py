"""Exact sparse linear algebra over the rationals.

Matrices are stored as ``{(row, col): Fraction}`` with zero entries dropped.
Rank and kernel computations use fraction-free row elimination on integer
rows (each row is kept primitive by dividing out the gcd of its entries).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Rat = Fraction


class LinalgError(ValueError):
    pass


class ShapeMismatch(LinalgError):
    pass


class CompositionNonzero(LinalgError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    # constructors
    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        ent = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ShapeMismatch("ragged dense input")
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = Fraction(v)
        return cls(nrows, ncols, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction]]) -> "RatMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    ent[(i, j)] = Fraction(v)
        return cls(rows, len(columns), ent)

    @classmethod
    def block(cls, row_sizes: Sequence[int], col_sizes: Sequence[int],
              blocks: Mapping[tuple[int, int], "RatMatrix"]) -> "RatMatrix":
        """Assemble a block matrix; missing blocks are zero."""
        roff = [0]
        for s in row_sizes:
            roff.append(roff[-1] + s)
        coff = [0]
        for s in col_sizes:
            coff.append(coff[-1] + s)
        ent = {}
        for (bi, bj), m in blocks.items():
            if (m.rows, m.cols) != (row_sizes[bi], col_sizes[bj]):
                raise ShapeMismatch(
                    f"block ({bi}, {bj}) is {m.rows}x{m.cols}, "
                    f"expected {row_sizes[bi]}x{col_sizes[bj]}")
            for (i, j), v in m.entries.items():
                ent[(roff[bi] + i, coff[bj] + j)] = v
        return cls(roff[-1], coff[-1], ent)

    # basic queries
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries.get(ij, Fraction(0))

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    # arithmetic
    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        if not c:
            return RatMatrix.zero(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent.get(k, 0) + v
        return RatMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.row_dicts()
        ent: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in orows[k].items():
                ent[(i, j)] = ent.get((i, j), 0) + a * b
        return RatMatrix(self.rows, other.cols, ent)

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Multiply by a sparse column vector ``{index: value}``."""
        out: dict[int, Fraction] = {}
        cols = self.col_dicts()
        for j, x in vec.items():
            if not x:
                continue
            for i, a in cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return {i: v for i, v in out.items() if v}

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        ent = {(rpos[i], cpos[j]): v for (i, j), v in self.entries.items()
               if i in rpos and j in cpos}
        return RatMatrix(len(rows), len(cols), ent)

    def conjugate_signs(self, row_signs: Sequence[int], col_signs: Sequence[int]) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols,
                         {(i, j): v * row_signs[i] * col_signs[j]
                          for (i, j), v in self.entries.items()})

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def hstack(mats: Sequence[RatMatrix], rows: int | None = None) -> RatMatrix:
    if not mats:
        return RatMatrix.zero(rows or 0, 0)
    return RatMatrix.block([mats[0].rows], [m.cols for m in mats],
                           {(0, k): m for k, m in enumerate(mats)})


def vstack(mats: Sequence[RatMatrix], cols: int | None = None) -> RatMatrix:
    if not mats:
        return RatMatrix.zero(0, cols or 0)
    return RatMatrix.block([m.rows for m in mats], [mats[0].cols],
                           {(k, 0): m for k, m in enumerate(mats)})


def direct_sum(mats: Sequence[RatMatrix]) -> RatMatrix:
    return RatMatrix.block([m.rows for m in mats], [m.cols for m in mats],
                           {(k, k): m for k, m in enumerate(mats)})


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product; index (i, k) of the result is ``i * b.rows + k``."""
    ent = {}
    for (i, j), x in a.entries.items():
        for (k, l), y in b.entries.items():
            ent[(i * b.rows + k, j * b.cols + l)] = x * y
    return RatMatrix(a.rows * b.rows, a.cols * b.cols, ent)


# --------------------------------------------------------------------------
# elimination

def _primitive(row: dict[int, Fraction]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row."""
    den = 1
    for v in row.values():
        den = _lcm(den, v.denominator)
    ints = {j: int(v * den) for j, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def _echelon(rows: Iterable[dict[int, Fraction]]) -> dict[int, dict[int, int]]:
    """Fraction-free elimination.

    Returns ``{pivot_col: row}`` where each row is a primitive integer row whose
    leading (smallest) column is ``pivot_col``. Among candidate rows sharing a
    leading column the sparsest one is kept as pivot to limit fill-in.
    """
    pending = [_primitive(r) for r in rows if r]
    pivots: dict[int, dict[int, int]] = {}
    # sparse rows first keeps the pivots short
    pending.sort(key=len)
    for row in pending:
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            if len(row) < len(piv):
                pivots[lead], row = row, piv
                piv = pivots[lead]
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {j: fa * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - fb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive({j: Fraction(v) for j, v in new.items()}) if new else {}
    return pivots


def rank(m: RatMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows <= m.cols:
        return len(_echelon(m.row_dicts()))
    return len(_echelon(m.col_dicts()))


def _rref(m: RatMatrix) -> dict[int, dict[int, Fraction]]:
    pivots = _echelon(m.row_dicts())
    order = sorted(pivots)
    red: dict[int, dict[int, Fraction]] = {}
    # back substitution from the last pivot column
    for c in reversed(order):
        row = {j: Fraction(v, pivots[c][c]) for j, v in pivots[c].items()}
        for c2 in list(row):
            if c2 != c and c2 in red:
                f = row[c2]
                for j, v in red[c2].items():
                    w = row.get(j, 0) - f * v
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        red[c] = row
    return red


def kernel_basis(m: RatMatrix) -> list[dict[int, Fraction]]:
    """Basis of the right null space, as sparse column vectors ``{index: value}``."""
    red = _rref(m)
    free = [j for j in range(m.cols) if j not in red]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for c, row in red.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def kernel_matrix(m: RatMatrix) -> RatMatrix:
    return RatMatrix.from_columns(m.cols, kernel_basis(m))


def in_span(span: RatMatrix, vectors: RatMatrix) -> bool:
    """True when every column of ``vectors`` lies in the column span of ``span``."""
    if vectors.cols == 0:
        return True
    return rank(hstack([span, vectors])) == rank(span)


def homology_dim(d_in: RatMatrix, d_out: RatMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for ``d_in: C_{n+1} -> C_n``, ``d_out: C_n -> C_{n-1}``."""
    if d_out.cols != d_in.rows:
        raise ShapeMismatch(f"d_out has {d_out.cols} columns but d_in has {d_in.rows} rows")
    if not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out @ d_in is nonzero")
    return d_out.cols - rank(d_out) - rank(d_in)
