"""Graded symmetric algebra on a finite homogeneous basis.

Monomials are non-decreasing tuples of basis indices; odd elements appear at
most once.  ``degs[i]`` is the degree of basis element i.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Sequence

Mono = tuple[int, ...]


def mono_degree(m: Mono, degs: Sequence[int]) -> int:
    return sum(degs[i] for i in m)


def normalize(word: Sequence[int], degs: Sequence[int]) -> tuple[int, Mono]:
    """Sort a word with Koszul signs: returns (sign, monomial); sign 0 if it vanishes."""
    w = list(word)
    sign = 1
    # insertion sort, tracking transpositions of adjacent elements
    for k in range(1, len(w)):
        j = k
        while j > 0 and w[j - 1] > w[j]:
            if degs[w[j - 1]] % 2 and degs[w[j]] % 2:
                sign = -sign
            w[j - 1], w[j] = w[j], w[j - 1]
            j -= 1
    for a, b in zip(w, w[1:]):
        if a == b and degs[a] % 2:
            return 0, ()
    return sign, tuple(w)


def sym_basis(degs: Sequence[int], p: int) -> list[Mono]:
    out = []
    for m in combinations_with_replacement(range(len(degs)), p):
        if all(not (a == b and degs[a] % 2) for a, b in zip(m, m[1:])):
            out.append(m)
    return out


def sym_multiply(a: dict[Mono, Fraction], b: dict[Mono, Fraction], degs) -> dict[Mono, Fraction]:
    out: dict[Mono, Fraction] = {}
    for m1, x in a.items():
        for m2, y in b.items():
            s, m = normalize(m1 + m2, degs)
            if s:
                v = out.get(m, 0) + s * x * y
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


def move_to_front_sign(m: Mono, positions: Sequence[int], degs) -> int:
    """Koszul sign of moving the entries at ``positions`` (kept in order) to the front."""
    chosen = set(positions)
    s = 0
    for i in positions:
        before = sum(degs[m[k]] for k in range(i) if k not in chosen)
        s += degs[m[i]] * before
    return -1 if s % 2 else 1


def unshuffles(m: Mono, degs) -> Iterator[tuple[int, Mono, Mono]]:
    """All splittings ``m = sign * left . right`` over subsets of positions."""
    n = len(m)
    for k in range(n + 1):
        for pos in combinations(range(n), k):
            rest = tuple(i for i in range(n) if i not in pos)
            yield (move_to_front_sign(m, pos, degs),
                   tuple(m[i] for i in pos), tuple(m[i] for i in rest))
