import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mgce.complex import ChainComplex, homology, point
from mgce.linalg import RatMatrix, kernel_basis, vstack
from mgce.mixed import (FloorTooHigh, GradedModule, MixedGradedModule, adjoint_eps, braiding,
                        dual_mixed, free_eps, internal_hom, oblv, tate_realization, tate_total,
                        tensor_mixed, triv_eps, unit, validate_mixed, weight_shift)
from conftest import random_complex


def random_graded(rng, weights=(-1, 0, 1)):
    return GradedModule({p: random_complex(rng, -1, 1, 2) for p in weights if rng.random() < 0.8})


def random_mixed(rng):
    g = random_graded(rng)
    kind = rng.choice(["left", "right", "triv"])
    return triv_eps(g) if kind == "triv" else adjoint_eps(g, kind)


seeds = st.integers(0, 10**6)


def test_unit_and_free_shapes():
    k = unit()
    assert k.dims_table() == {0: {0: 1}}
    f = free_eps(point(0))
    assert f.dims_table() == {0: {0: 1}, -1: {1: 1}}
    assert f.eps(0, 0).to_dense() == [[1]]


def test_adjoint_examples():
    g = GradedModule({0: point(0)})
    left = adjoint_eps(g, "left")
    assert left.dims_table() == {-1: {1: 1}, 0: {0: 1}}
    assert left.eps(0, 0).to_dense() == [[1]]
    right = adjoint_eps(g, "right")
    assert right.dims_table() == {0: {0: 1}, 1: {-1: 1}}
    assert right.eps(1, -1).to_dense() == [[1]]
    assert all(v == 0 for v in homology(tate_realization(right)).values())
    assert all(v == 0 for v in homology(realization_of(right)).values())


def realization_of(m):
    return tate_total(m, -max(m.weights))


def test_corrupted_eps_is_caught():
    m = adjoint_eps(GradedModule({0: ChainComplex({1: 1, 0: 1}, {1: RatMatrix.identity(1)})}), "left")
    assert validate_mixed(m) is None
    # drop the sign on the shifted differential
    w = m.weights[-1]
    bad_w = ChainComplex(w.dims, {n: d.scale(-1) for n, d in w.diffs.items()}, w.labels)
    bad = MixedGradedModule({0: m.weights[0], -1: bad_w}, dict(m.mixed))
    v = validate_mixed(bad)
    assert v is not None and v.kind.startswith("eps d")


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_constructors_validate(seed):
    rng = random.Random(seed)
    g = random_graded(rng)
    for m in (triv_eps(g), adjoint_eps(g, "left"), adjoint_eps(g, "right")):
        assert validate_mixed(m) is None
    t = triv_eps(g)
    assert all(e.is_zero() for e in t.mixed.values())
    assert oblv(t) == g


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_tensor_laws(seed):
    rng = random.Random(seed)
    m, n = random_mixed(rng), random_mixed(rng)
    t = tensor_mixed(m, n)
    assert validate_mixed(t) is None
    assert tensor_mixed(unit(), m) == m
    assert tensor_mixed(m, unit(2)) == weight_shift(m, 2)
    # dimension formula
    for p, row in t.dims_table().items():
        for deg, d in row.items():
            expect = sum(m.dim(i, a) * n.dim(p - i, deg - a)
                         for i in m.weights for a in m.weights[i].dims)
            assert d == expect
    # braiding intertwines d and eps
    tn = tensor_mixed(n, m)
    b = braiding(m, n)
    for (p, deg), s in b.items():
        assert b.get((p, deg - 1), RatMatrix.zero(tn.dim(p, deg - 1), t.dim(p, deg - 1))) @ t.d(p, deg) \
            == tn.d(p, deg) @ s
        tgt = b.get((p - 1, deg + 1), RatMatrix.zero(tn.dim(p - 1, deg + 1), t.dim(p - 1, deg + 1)))
        assert tgt @ t.eps(p, deg) == tn.eps(p, deg) @ s


def test_tensor_weight_support():
    m = adjoint_eps(GradedModule({1: point(0)}), "left")  # weights 0, 1
    n = unit()
    t = tensor_mixed(m, n)
    assert t.dims_table()[1] == m.dims_table()[1]


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_dual_and_hom(seed):
    rng = random.Random(seed)
    m = random_mixed(rng)
    d = dual_mixed(m)
    assert validate_mixed(d) is None
    assert dual_mixed(d) == m
    if m.weights:
        lo, hi = m.weight_support()
        assert d.weight_support() == (-hi, -lo)
    assert internal_hom(m, unit()) == d
    assert internal_hom(unit(), m) == m
    n = random_mixed(rng)
    assert validate_mixed(internal_hom(m, n)) is None


def test_dual_examples():
    assert dual_mixed(unit()) == unit()
    m = MixedGradedModule({1: point(-1)})
    assert dual_mixed(m) == MixedGradedModule({-1: point(1)})


def _strict_maps(m, n):
    """Brute force: dimension of the space of weight- and degree-preserving maps
    commuting with d and eps, solved directly from the linear constraints."""
    cells = [(p, a) for p, a in m.cells() if n.dim(p, a)]
    var = {}
    for p, a in cells:
        for i in range(m.dim(p, a)):
            for j in range(n.dim(p, a)):
                var[(p, a, j, i)] = len(var)
    rows = []

    def f(p, a):
        return {(j, i): var[(p, a, j, i)] for i in range(m.dim(p, a)) for j in range(n.dim(p, a))
                if (p, a, j, i) in var}

    for p, a in m.cells():
        for op, (p2, a2) in (("d", (p, a - 1)), ("eps", (p - 1, a + 1))):
            mm = m.d(p, a) if op == "d" else m.eps(p, a)
            nn = n.d(p, a) if op == "d" else n.eps(p, a)
            src, tgt = f(p, a), f(p2, a2)
            # (nn f_src - f_tgt mm)[r, c] = 0
            for r in range(n.dim(p2, a2)):
                for c in range(m.dim(p, a)):
                    row = {}
                    for (j, i), v in src.items():
                        if i == c and nn[r, j]:
                            row[v] = row.get(v, 0) + nn[r, j]
                    for (j, i), v in tgt.items():
                        if j == r and mm[i, c]:
                            row[v] = row.get(v, 0) - mm[i, c]
                    if any(row.values()):
                        rows.append(row)
    mat = RatMatrix(len(rows), len(var), {(k, v): c for k, row in enumerate(rows) for v, c in row.items()})
    return len(kernel_basis(mat))


def test_strict_maps_from_internal_hom():
    m = adjoint_eps(GradedModule({0: point(0)}), "left")
    h = internal_hom(m, m)
    both = vstack([h.d(0, 0), h.eps(0, 0)], cols=h.dim(0, 0))
    assert len(kernel_basis(both)) == _strict_maps(m, m) == 1


def test_weight_shift():
    m = adjoint_eps(GradedModule({0: point(0)}), "right")
    assert weight_shift(m, 0) == m
    assert weight_shift(weight_shift(m, 2), -5) == weight_shift(m, -3)
    assert weight_shift(m, 2).dims_table() == {2: {0: 1}, 3: {-1: 1}}


def test_triv_empty():
    assert triv_eps(GradedModule({})) == MixedGradedModule({})


def test_tate_total():
    g = GradedModule({0: point(0), 1: point(-1, 2)})
    t = tate_total(triv_eps(g), -1)
    assert homology(t) == {0: 1, 1: 2}
    with pytest.raises(FloorTooHigh):
        tate_total(unit(), 1)
    # floor 0 keeps only weights <= 0
    assert tate_total(triv_eps(g), 0).dims == {0: 1}


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_tate_total_squares_to_zero(seed):
    m = random_mixed(random.Random(seed))
    if not m.weights:
        return
    t = tate_realization(m)
    from mgce.complex import validate_complex
    assert validate_complex(t) is None
    # Fraction arithmetic leaks no floats
    assert all(isinstance(v, Fraction) for d in t.diffs.values() for v in d.entries.values())
