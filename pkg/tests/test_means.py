import math

import mpmath
import pytest
from mpmath import mpf

from liouville.means import (
    CROSSING_WIDTH,
    NoSignChangeError,
    dirichlet_partial_sum,
    dirichlet_quotient_check,
    dirichlet_tail_bound,
    find_sign_crossing,
    lambda_table,
    mu_table,
    s_minus,
    s_plus,
    series_terms,
    step1_residual,
    step2_residual,
    theorem1_constants,
    theorem1_remainder,
    theorem1_residual,
)
from liouville.precision import PrecisionContext
from liouville.theta import remainder_bound

from oracles import liouville, moebius, phi_ref, zeta_ref

CTX = PrecisionContext(128)
TOL = mpf("1e-30")


def s_plus_ref(x, prec=300):
    """Independent value from theta: phi(x) - 2 phi(2x)."""
    with mpmath.workprec(prec):
        x = mpf(x)
        return phi_ref(x, prec) - 2 * phi_ref(2 * x, prec)


def direct_ref(x, sign, terms, prec=300):
    with mpmath.workprec(prec):
        a = mpmath.pi * mpf(x)
        return mpmath.fsum(liouville(n) / (mpmath.exp(n * a) + sign) for n in range(1, terms + 1))


def test_tables_match_oracle():
    assert lambda_table(500)[1:].tolist() == [liouville(n) for n in range(1, 501)]
    assert mu_table(500)[1:].tolist() == [moebius(n) for n in range(1, 501)]


def test_constants():
    k = theorem1_constants(CTX)
    assert k.c.lower > 0
    with mpmath.workprec(300):
        assert k.c.contains((mpmath.sqrt(2) - 1) / 2)
        assert (k.c * 2).contains(mpmath.sqrt(2) - 1)
    assert k.half.value == mpf(1) / 2 and k.half.error_bound == 0


@pytest.mark.parametrize(
    "x, expected",
    [
        ("0.5", "0.123312932828575047105777244166"),
        ("0.1", "-0.154929821374142419629076761684"),
        ("0.2", "0.0356678893255570649781307803507"),
    ],
)
def test_s_plus_frozen_values(x, expected):
    v = s_plus(x, CTX)
    with mpmath.workprec(200):
        assert abs(v.value - mpf(expected)) <= v.error_bound + TOL
        assert v.contains(s_plus_ref(mpf(x)))


def test_s_plus_against_direct_summation():
    # x = 0.5 needs ~70 terms for 1e-40; both sums use the oracle's lambda
    with mpmath.workprec(144):
        x = mpf("0.5")
    assert s_plus(x, CTX).contains(direct_ref(x, +1, 120))
    assert s_minus(x, CTX).contains(direct_ref(x, -1, 120))


@pytest.mark.parametrize("x", [1, 2])
def test_s_minus_equals_phi(x):
    with mpmath.workprec(200):
        assert s_minus(x, CTX).contains(phi_ref(x))
    assert float(s_minus(1, CTX)) == pytest.approx(0.0432174056, abs=1e-10)
    assert float(s_minus(2, CTX)) == pytest.approx(0.0018674427, abs=1e-10)


def test_large_x_single_term():
    v = s_minus(50, CTX)
    with mpmath.workprec(300):
        first = 1 / mpmath.expm1(50 * mpmath.pi)
        second = -1 / mpmath.expm1(100 * mpmath.pi)
        assert v.contains(first + second)
        assert abs(v.value - first) / first < mpf(10) ** -35


def test_series_term_count_formula():
    n = series_terms("0.1", CTX)
    x = 0.1
    expected = math.ceil((136 * math.log(2) + math.log(1 / (1 - math.exp(-math.pi * x)))) / (math.pi * x))
    assert n == expected


@pytest.mark.parametrize("residual", [step1_residual, step2_residual])
@pytest.mark.parametrize("x", ["0.1", "0.25", "0.5", "1", "2"])
def test_step_identities(residual, x):
    r = residual(x, CTX)
    assert r.contains(0)
    assert r.error_bound <= TOL


def test_step2_large_x():
    r = step2_residual(10, CTX)
    assert r.contains(0) and r.error_bound <= TOL


def test_step1_huge_x():
    r = step1_residual(60, CTX)
    assert abs(r.value) + r.error_bound < 2 * mpf(10) ** -60


@pytest.mark.parametrize("x", ["0.05", "0.1", "0.2", "0.5"])
def test_theorem1_within_remainder_bound(x):
    r = theorem1_residual(x, CTX)
    assert abs(r.value) <= remainder_bound(float(x)) + 10 * r.error_bound + TOL


@pytest.mark.parametrize(
    "x, approx_remainder",
    [("0.05", -1.4363704e-13), ("0.1", -6.7395854e-7), ("0.2", -0.0012272693), ("0.5", -0.083793848)],
)
def test_theorem1_residual_is_theta_remainder(x, approx_remainder):
    r = theorem1_residual(x, CTX)
    exact_rem = theorem1_remainder(x, CTX)
    assert (r - exact_rem).contains(0)
    assert float(exact_rem) == pytest.approx(approx_remainder, rel=1e-7, abs=0)


@pytest.mark.parametrize("x, sign", [("0.05", -1), ("0.1", -1), ("0.15", -1), ("0.2", 1), ("0.5", 1)])
def test_certified_signs(x, sign):
    assert s_plus(x, CTX).certified_sign() == sign


@pytest.mark.parametrize("x", ["0.05", "0.2", "1", "3"])
def test_truncation_soundness(x):
    v = s_plus(x, CTX)
    with CTX.workprec(16):
        xm = mpf(x)
    doubled = direct_ref(xm, +1, 2 * series_terms(xm, CTX))
    with mpmath.workprec(300):
        assert abs(doubled - v.value) <= v.error_bound


def test_max_terms_cap():
    with pytest.raises(ValueError, match="max_terms"):
        s_plus("0.001", PrecisionContext(128, max_terms=1000))


@pytest.mark.parametrize("fn", [s_plus, s_minus])
def test_rejects_nonpositive(fn):
    with pytest.raises(ValueError):
        fn(0, CTX)
    with pytest.raises(ValueError):
        fn(-1, CTX)


def test_theorem1_domain():
    with pytest.raises(ValueError):
        theorem1_residual("1.5", CTX)


def _true_root():
    with mpmath.workprec(200):
        return mpmath.findroot(lambda t: s_plus_ref(t, 200), mpf("0.17"))


def test_crossing_brackets_true_root():
    a, b = find_sign_crossing("0.1", "0.3", CTX)
    with mpmath.workprec(200):
        assert b - a <= CROSSING_WIDTH
        assert a <= _true_root() <= b
        assert abs(_true_root() - mpf("0.17182386097209421183927509461")) < mpf(10) ** -25


def test_crossing_narrow_bracket_same_root():
    a1, b1 = find_sign_crossing("0.1", "0.3", CTX)
    a2, b2 = find_sign_crossing("0.15", "0.2", CTX)
    with mpmath.workprec(200):
        assert max(a1, a2) <= min(b1, b2)


def test_crossing_is_displaced_from_main_term_root():
    # the remainder near x = 0.17 is about -3.6e-4, which moves the root
    # by about 2.5e-4 from the root of the main term alone
    a, b = find_sign_crossing("0.15", "0.2", CTX)
    with mpmath.workprec(200):
        main_root = 3 - 2 * mpmath.sqrt(2)
        assert a - main_root == pytest.approx(2.51e-4, rel=0.01)
        rem = theorem1_remainder(a, CTX)
        assert float(rem) == pytest.approx(-3.6e-4, rel=0.05)


def test_no_sign_change():
    with pytest.raises(NoSignChangeError):
        find_sign_crossing("0.3", "0.5", CTX)
    with pytest.raises(ValueError):
        find_sign_crossing("0.3", "0.1", CTX)


@pytest.mark.parametrize("s, N", [(2, 10**5), (3, 10**4), (10, 10)])
def test_dirichlet_quotient(s, N):
    r = dirichlet_quotient_check(s, N, CTX)
    assert abs(float(r.value)) + float(r.error_bound) <= dirichlet_tail_bound(s, N)


def test_dirichlet_target_pi_squared_over_15():
    partial = dirichlet_partial_sum(2, 10**5, CTX)
    with mpmath.workprec(200):
        target = mpmath.pi**2 / 15
        assert abs(partial.value - target) + partial.error_bound <= mpf("2e-5")
        assert abs(zeta_ref(4) / zeta_ref(2) - target) < mpf(10) ** -50


def test_dirichlet_partial_sum_small_exact():
    with mpmath.workprec(200):
        want = mpmath.fsum(mpf(liouville(n)) / mpf(n) ** 3 for n in range(1, 101))
    assert dirichlet_partial_sum(3, 100, CTX).contains(want)


def test_dirichlet_domain():
    with pytest.raises(ValueError):
        dirichlet_quotient_check(1, 100, CTX)
    with pytest.raises(ValueError):
        dirichlet_partial_sum(2, 0, CTX)
