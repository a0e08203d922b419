import math

import mpmath
import pytest
from mpmath import mpf

from liouville.precision import BoundedValue, PrecisionContext
from liouville.theta import phi, remainder_bound, theta, theta_functional_residual

from oracles import phi_ref

CTX = PrecisionContext(128)


@pytest.mark.parametrize(
    "x, expected",
    [
        (1, "0.0432174056066540072876580607551"),
        (0.5, "0.209747744041883061681093365676"),
        (2, "0.00186744274386954552383979753348"),
    ],
)
def test_phi_frozen_values(x, expected):
    v = phi(x, CTX)
    with mpmath.workprec(200):
        assert abs(v.value - mpf(expected)) <= v.error_bound + mpf(10) ** -30
    assert v.error_bound < mpf(10) ** -36


@pytest.mark.parametrize("x", ["0.01", "0.1", "0.37", "1", "3", "10", "100"])
def test_phi_against_jtheta(x):
    ctx = PrecisionContext(128)
    with ctx.workprec(16):
        xm = mpf(x)
    # 1 + phi(100) needs about 460 bits before the 1 is subtracted
    assert phi(xm, ctx).contains(phi_ref(xm, prec=1000))


def test_phi_large_argument_single_term():
    v = phi(100, CTX)
    assert float(v) == pytest.approx(math.exp(-100 * math.pi), rel=1e-12, abs=0)
    assert 3.6e-137 < float(v) < 3.7e-137


@pytest.mark.parametrize("x", ["1e-5", "3e-6"])
def test_phi_small_argument_via_functional_equation(x):
    ctx = PrecisionContext(128)
    with ctx.workprec(16):
        xm = mpf(x)
    v = phi(xm, ctx)
    assert v.contains(phi_ref(xm))
    # direct summation would need about 10^3 terms and is capped below that
    with pytest.raises(ValueError):
        phi(BoundedValue(xm, mpf(10) ** -40, 128), PrecisionContext(128, max_terms=100))


def test_theta_frozen_values():
    with mpmath.workprec(200):
        assert abs(theta(1, CTX).value - mpf("1.08643481121330801457531612151")) < mpf(10) ** -29
        assert abs(theta(4, CTX).value - mpf("1.00000697468471241799127935746")) < mpf(10) ** -29
    assert float(theta(1, CTX)) == pytest.approx(1.0864348112, abs=1e-10)
    assert float(theta(4, CTX)) == pytest.approx(1.0000069746, abs=1e-10)


@pytest.mark.parametrize("x", ["0.05", "0.5", "5"])
def test_theta_above_one(x):
    assert theta(x, CTX).lower > 1


@pytest.mark.parametrize("x", ["50", "400"])
def test_phi_positive_where_theta_rounds_to_one(x):
    assert phi(x, CTX).certified_sign() == 1


def test_phi_strictly_decreasing():
    grid = [mpf(k) / 8 for k in range(1, 41)]
    values = [phi(x, CTX) for x in grid]
    for a, b in zip(values, values[1:]):
        assert a.lower > b.upper


@pytest.mark.parametrize("x", [0, -1, mpmath.inf])
def test_phi_rejects_bad_arguments(x):
    with pytest.raises(ValueError):
        phi(x, CTX)


def test_max_terms_cap():
    with pytest.raises(ValueError, match="max_terms"):
        phi("0.001", PrecisionContext(128, max_terms=5))


@pytest.mark.parametrize("prec", [128, 256])
@pytest.mark.parametrize("x", ["0.1", "0.3", "1", "3", "10"])
def test_functional_equation_residual(x, prec):
    r = theta_functional_residual(x, PrecisionContext(prec))
    assert r.contains(0)
    assert r.error_bound <= mpf("1e-30") * mpf(2) ** (128 - prec)


def test_error_bound_shrinks_with_precision():
    low = phi("0.3", PrecisionContext(128)).error_bound
    high = phi("0.3", PrecisionContext(256)).error_bound
    assert high < low * mpf(2) ** -100


def test_enclosed_argument_widens_bound():
    y = BoundedValue(mpf(1), mpf(10) ** -20, 128)
    v = phi(y, CTX)
    assert v.error_bound > mpf(10) ** -22
    with mpmath.workprec(200):
        for shift in (-1, 1):
            assert v.contains(phi_ref(1 + shift * mpf(10) ** -20))


@pytest.mark.parametrize(
    "x, expected",
    [(0.5, 0.18334112787572737), (0.1, 1.4296821190361466e-06), (0.05, 3.0470018235270447e-13)],
)
def test_remainder_bound_values(x, expected):
    assert remainder_bound(x) == pytest.approx(expected, rel=1e-14, abs=0)
    assert remainder_bound(x) == pytest.approx(3 * math.exp(-math.pi / (2 * x)) / math.sqrt(x), rel=1e-15, abs=0)


def test_remainder_bound_vanishes_faster_than_powers():
    for x in (0.01, 0.005):
        assert remainder_bound(x) < x**20


@pytest.mark.parametrize("x", [0.0, -0.5, 1.5])
def test_remainder_bound_domain(x):
    with pytest.raises(ValueError):
        remainder_bound(x)


@pytest.mark.parametrize("x", ["0.05", "0.1", "0.3", "0.7", "1"])
def test_remainder_bound_dominates_exact_remainder(x):
    with mpmath.workprec(200):
        xm = mpf(x)
        exact_rem = (phi_ref(1 / xm) - mpmath.sqrt(2) * phi_ref(1 / (2 * xm))) / mpmath.sqrt(xm)
    assert abs(float(exact_rem)) <= remainder_bound(float(x))
