from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from trisectkit.charclass import (
    BundleClass, CharClassError, ChernData, QuadraticRoot, alpha_window, ample_shift, bmy_check,
    bmy_equality, c1_cocycle_degree_cp2, cover_c1_degree, effective_divisor_decision,
    leaf_pairing_upstairs, miyaoka_leading, riemann_roch, stable_multiple, swap_verdict, window_polynomial,
)
from trisectkit.monodromy import BranchDatum

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
H = BundleClass(1, -3, 1, -3)  # hyperplane class on CP^2 with K = -3H


def in_window_direct(beta, alpha):
    return 0 < alpha < 1 and beta <= window_polynomial(alpha) and beta < alpha and beta < 1 - alpha


def test_bmy_examples():
    assert bmy_check(ChernData(9, 3)) and bmy_equality(ChernData(9, 3))
    assert bmy_check(ChernData(0, 0))
    assert not bmy_check(ChernData(10, 3))


def test_chern_data_derived_values():
    cd = ChernData(9, 3)
    assert cd.chi_h == 1 and cd.chi_h_integral and cd.warnings() == []
    assert cd.beta == F(1, 3)
    assert ChernData(1, 2).warnings()
    with pytest.raises(CharClassError):
        ChernData(0, 5).beta


def test_riemann_roch_examples():
    assert riemann_roch(BundleClass(0, 0, 0, 0), 7) == 7
    assert riemann_roch(H, 1) == 3
    assert riemann_roch(H.multiple(2), 1) == 6  # conics


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_riemann_roch_serre_duality(ll, lk, wl, wk, ksq, chi):
    L = BundleClass(ll, lk, wl, wk)
    assert riemann_roch(L, chi) == riemann_roch(L.serre_dual(ksq), chi)
    assert L.serre_dual(ksq).serre_dual(ksq) == L


def test_decision_examples():
    assert effective_divisor_decision(BundleClass(-10, 0, 1, 0), 1) == "none"
    # chi > 0 and omega.L > omega.K
    assert effective_divisor_decision(BundleClass(1, -3, 1, -3), 1, 9) == "L_effective"
    # the mirror image
    assert effective_divisor_decision(BundleClass(9, 9, -2, 1), 1, 9) == "KminusL_effective"
    # positive area on both sides decides nothing
    assert effective_divisor_decision(BundleClass(4, 2, 1, 3), 1, 9) == "either"


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_decision_is_serre_symmetric(ll, lk, wl, wk, ksq, chi):
    L = BundleClass(ll, lk, wl, wk)
    v = effective_divisor_decision(L, chi, ksq)
    assert effective_divisor_decision(L.serre_dual(ksq), chi, ksq) == swap_verdict(v)


def test_stable_multiple():
    assert stable_multiple(H, 1, 9) == 1
    L = BundleClass(2, 5, 1, 7)
    m0 = stable_multiple(L, 1, 9)
    for m in range(m0, m0 + 30):
        assert effective_divisor_decision(L.multiple(m), 1, 9) == "L_effective"
    assert effective_divisor_decision(L.multiple(m0 - 1), 1, 9) != "L_effective"
    with pytest.raises(CharClassError):
        stable_multiple(BundleClass(-1, 0, 1, 0), 1)


def _check_shift(L, HL, shift, chi_h=1, k_sq=9):
    m, n = shift.pair
    mp = shift.m_prime
    MM = mp * mp * H.LL + 2 * mp * HL + L.LL
    assert MM > 0 and mp * H.LL + HL > 0
    combo = BundleClass(m * m * H.LL + 2 * m * n * HL + n * n * L.LL, m * H.LK + n * L.LK,
                        m * H.omega_L + n * L.omega_L, L.omega_K)
    assert effective_divisor_decision(combo, chi_h, k_sq) == "L_effective"


def test_ample_shift_examples():
    s = ample_shift(H, H, 1, 1, 9)
    assert s.m_prime == 1
    _check_shift(H, 1, s)
    # L = -7H: H.L = -7 forces m' = 8
    L = BundleClass(49, 21, -7, -3)
    s = ample_shift(L, H, -7, 1, 9)
    assert s.m_prime == 8
    _check_shift(L, -7, s)
    for t in (3, 11, 20):
        assert ample_shift(H.multiple(-t), H, -t, 1, 9).m_prime == t + 1
    with pytest.raises(CharClassError):
        ample_shift(H, BundleClass(-1, 0, 1, 0), 0, 1)


def test_miyaoka_leading_examples():
    cd = ChernData(F(7), F(2))
    assert miyaoka_leading(0, cd) == (cd.c1_sq - cd.c2) / 6
    assert miyaoka_leading(F(1, 2), cd) == cd.c1_sq / 24 - cd.c2 / 6
    assert window_polynomial(F(1, 2)) == F(1, 4)


@given(st.fractions(min_value=0, max_value=1, max_denominator=50),
       st.fractions(min_value=F(1, 10), max_value=100, max_denominator=20),
       st.fractions(min_value=-100, max_value=100, max_denominator=20))
def test_miyaoka_sign_matches_window_polynomial(alpha, c1sq, c2):
    cd = ChernData(c1sq, c2)
    assert (miyaoka_leading(alpha, cd) > 0) == (cd.beta < window_polynomial(alpha))


def test_window_examples():
    assert alpha_window(F(1, 3)).is_empty
    w = alpha_window(F(3, 10))
    assert not w.is_empty and w.contains(F(7, 20))
    assert alpha_window(F(1, 2)).is_empty
    assert str(alpha_window(F(1, 5))) == "(1/5, 4/5)"
    with pytest.raises(CharClassError):
        alpha_window(0)


def test_window_empty_iff_beta_at_least_a_third():
    for i in range(1, 61):
        beta = F(i, 100)
        assert alpha_window(beta).is_empty == (beta >= F(1, 3))


def test_window_against_direct_evaluation():
    grid = [F(j, 240) for j in range(-5, 246)]
    for beta in [F(1, 10), F(1, 4), F(13, 50), F(3, 10), F(33, 100), F(1, 3), F(2, 5)]:
        w = alpha_window(beta)
        for a in grid:
            assert w.contains(a) == in_window_direct(beta, a), (beta, a)


def test_quadratic_root_isolation():
    r = QuadraticRoot(F(1), F(0), F(-2), F(1), F(2))  # sqrt 2
    assert r.compare(F(141, 100)) == 1 and r.compare(F(142, 100)) == -1
    fine = r.refine(40)
    assert fine.hi - fine.lo < F(1, 10 ** 9)
    assert abs(float(fine) - 2 ** 0.5) < 1e-12
    exact = QuadraticRoot(F(1), F(-1), F(0), F(1, 2), F(3, 2))  # root 1 at the first midpoint
    assert exact.compare(1) == 0 and exact.refine().compare(1) == 0
    with pytest.raises(CharClassError):
        QuadraticRoot(F(1), F(0), F(-2), F(2), F(3))


def test_first_chern_degree():
    base = c1_cocycle_degree_cp2()
    assert base.pairings == (1, 1, 1) and base.degree == 3
    assert leaf_pairing_upstairs(4) == 4
    assert leaf_pairing_upstairs(2, [BranchDatum("p", (2,))]) == 1
    assert cover_c1_degree(2, [[BranchDatum("p", (2,))]] * 3).degree == 3
    with pytest.raises(CharClassError):
        cover_c1_degree(2, [[]])
