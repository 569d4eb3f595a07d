import random
from fractions import Fraction

import pytest

from mgce.ce import ce_homological
from mgce.complex import homology, validate_complex
from mgce.enveloping import (NotDiscrete, NotValidated, koszul_resolution, left_multiply,
                             pbw_truncate, u_cone_mixed)
from mgce.lie import (DgLieAlgebra, abelian, aff1, dual_numbers_current, heis3, random_two_step, sl2)
from mgce.linalg import RatMatrix, in_span, kernel_basis
from mgce.mixed import tate_total, validate_mixed
from mgce.oracle import koszul_variant_defect


def test_abelian_pbw_basis():
    for n in range(1, 5):
        pb = pbw_truncate(abelian(n), 2)
        assert len(pb.basis) == 1 + n + n * (n + 1) // 2


def test_aff1_rewrite():
    pb = pbw_truncate(aff1(), 2)
    assert pb.normal_form((1, 0)) == {(0, 1): 1, (0,): -1}


def test_sl2_associates():
    pb = pbw_truncate(sl2(), 3)
    h, e, f = 0, 1, 2
    ef_h = pb.multiply(pb.normal_form((e, f)), {(h,): Fraction(1)})
    e_fh = pb.multiply({(e,): Fraction(1)}, pb.normal_form((f, h)))
    assert ef_h == e_fh
    assert pb.associativity_failures(2) == []


def test_odd_generator_squares_to_half_bracket():
    g = DgLieAlgebra(("a", "c"), (1, 2), {}, {(0, 0): {1: Fraction(2)}})
    pb = pbw_truncate(g, 2)
    assert pb.normal_form((0, 0)) == {(1,): 1}
    assert pb.associativity_failures() == []


def test_overflow_flag():
    pb = pbw_truncate(aff1(), 2)
    _, over = pb.product((0, 1), (1,))
    assert over
    _, over = pb.product((0,), (1,))
    assert not over


def test_not_discrete():
    with pytest.raises(NotDiscrete):
        koszul_resolution(dual_numbers_current(aff1()), 2)
    with pytest.raises(NotValidated):
        pbw_truncate(DgLieAlgebra(("x", "y"), (0, 0), {}, {(0, 1): {0: Fraction(1)}}), 2)


def test_aff1_resolution_differential():
    kr = koszul_resolution(aff1(), 4, 2)
    cx = kr.complex
    col = cx.d(2).column(cx.index(2, ((), (0, 1))))
    got = {cx.label(1, r): v for r, v in col.items()}
    assert got == {((0,), (1,)): 1, ((1,), (0,)): -1, ((), (0,)): -1}


def cycles_die(g, D):
    small, big = koszul_resolution(g, D).complex, koszul_resolution(g, D + 2).complex
    for n in small.dims:
        if n == 0:
            continue
        z = kernel_basis(small.d(n))
        if not z:
            continue
        idx = [big.index(n, small.label(n, i)) for i in range(small.dim(n))]
        zs = RatMatrix.from_columns(big.dim(n), [{idx[i]: v for i, v in vec.items()} for vec in z])
        if not in_span(big.d(n + 1), zs):
            return False
    return True


@pytest.mark.parametrize("g", [abelian(2), aff1(), heis3()], ids=lambda g: g.name)
@pytest.mark.parametrize("D", [2, 3, 4])
def test_resolution_window_exactness(g, D):
    kr = koszul_resolution(g, D)
    assert validate_complex(kr.complex) is None
    assert homology(kr.complex)[0] == 1
    assert (kr.augmentation @ kr.complex.d(1)).is_zero()
    assert cycles_die(g, D)


def test_aff1_cone_example():
    uc = u_cone_mixed(aff1(), 2, 2)
    assert uc.eps_of(2, ((), (0, 1))) == {((0,), (1,)): 1, ((1,), (0,)): -1, ((), (0,)): -1}


def test_abelian_cone_is_koszul_differential():
    uc = u_cone_mixed(abelian(2), 2, 2)
    assert uc.eps_of(1, ((1,), (0,))) == {((0, 1), ()): 1}


@pytest.mark.parametrize("g", [abelian(2), aff1(), heis3(), sl2()], ids=lambda g: g.name)
def test_cone_total_is_koszul_resolution(g):
    D, P = 4, g.dim
    uc = u_cone_mixed(g, D - P, P)
    assert tate_total(uc.module, -P) == koszul_resolution(g, D, P).complex


def _graded_examples():
    rng = random.Random(7)
    return [aff1(), sl2(), dual_numbers_current(aff1())] + \
        [random_two_step(rng, 4, (0, 1, -1)) for _ in range(5)]


@pytest.mark.parametrize("g", _graded_examples(), ids=lambda g: g.name or "random")
def test_cone_validates(g):
    uc = u_cone_mixed(g, 2, 2)
    assert validate_mixed(uc.module) is None


@pytest.mark.parametrize("g", _graded_examples(), ids=lambda g: g.name or "random")
def test_eps_is_left_linear(g):
    uc = u_cone_mixed(g, 3, 2)
    pb = uc.truncation
    for p in (1, 2):
        w = uc.module.weight(p)
        for n in w.dims:
            for lab in w.labels[n]:
                u, S = lab
                for v in pb.basis:
                    if not v or len(v) + len(u) > 1 + uc.D + uc.P - p - 1:
                        continue
                    sv = -1 if pb.degree(v) % 2 else 1
                    lhs = {}
                    for key, c in left_multiply(uc, v, p, lab).items():
                        for k2, c2 in uc.eps_of(p, key).items():
                            lhs[k2] = lhs.get(k2, 0) + c * c2
                    rhs = {}
                    for key, c in uc.eps_of(p, lab).items():
                        for k2, c2 in left_multiply(uc, v, p - 1, key).items():
                            rhs[k2] = rhs.get(k2, 0) + sv * c * c2
                    assert {k: x for k, x in lhs.items() if x} == {k: x for k, x in rhs.items() if x}


@pytest.mark.parametrize("g", _graded_examples(), ids=lambda g: g.name or "random")
def test_killing_words_gives_ce(g):
    """Projecting to u = () recovers CE_eps: same d, eps up to the sign (-1)^p on weight p."""
    P = 2
    uc = u_cone_mixed(g, 2, P)
    ce = ce_homological(g, P)
    for p in range(P + 1):
        for S in ce.basis(p):
            n = ce.degree(S)
            col = uc.module.d(p, n).column(uc.index(p, ((), S))[1])
            labs = uc.module.weight(p).labels.get(n - 1, [])
            proj = {labs[i][1]: v for i, v in col.items() if labs[i][0] == ()}
            assert proj == ce.d(S)
            if p:
                proj = {k[1]: -v for k, v in uc.eps_of(p, ((), S)).items() if k[0] == ()}
                assert proj == ce.eps(S)


def test_bracket_in_place_variant_breaks_d_squared_for_sl2():
    # aff1 and heis3 cannot tell the two placements apart; sl2 can
    assert koszul_variant_defect(sl2(), 4) == 13
    assert koszul_variant_defect(aff1(), 4) == 0
    assert koszul_variant_defect(heis3(), 4) == 0
