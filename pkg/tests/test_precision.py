import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from liouville.precision import BoundedValue, PrecisionContext, exact, render, zeta_real

from oracles import zeta_ref


@pytest.mark.parametrize("s", [2, 3, 4, "2.5", 30, "1.01"])
@pytest.mark.parametrize("prec", [64, 128, 256])
def test_zeta_encloses_reference(s, prec):
    ctx = PrecisionContext(prec)
    z = zeta_real(s, ctx)
    assert z.contains(zeta_ref(s))
    with mpmath.workprec(prec + 16):
        assert z.error_bound <= mpf(2) ** (8 - prec) * abs(z.value)


def test_zeta_closed_forms():
    ctx = PrecisionContext(128)
    with mpmath.workprec(200):
        assert zeta_real(2, ctx).contains(mpmath.pi**2 / 6)
        assert zeta_real(4, ctx).contains(mpmath.pi**4 / 90)
    assert float(zeta_real(2, ctx)) == pytest.approx(1.6449340668, abs=1e-10)
    assert float(zeta_real(30, ctx)) == pytest.approx(1.0000000009, abs=1e-10)


def test_zeta_quotient_two_fifths():
    ctx = PrecisionContext(128)
    q = zeta_real(4, ctx) / (zeta_real(2, ctx) * zeta_real(2, ctx))
    with mpmath.workprec(300):
        assert q.contains(mpf(2) / 5)
    assert q.error_bound < mpf(10) ** -35


@pytest.mark.parametrize("s", [1, "1.0000001", 0, -2])
def test_zeta_rejects_near_pole(s):
    with pytest.raises(ValueError):
        zeta_real(s)


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(52)
    with pytest.raises(ValueError):
        PrecisionContext(128, max_terms=0)
    ctx = PrecisionContext(100)
    assert ctx.with_precision(200).precision_bits == 200
    assert ctx.unit == mpf(2) ** -99


def test_context_constants():
    ctx = PrecisionContext(200)
    with mpmath.workprec(400):
        assert ctx.pi.contains(mpmath.pi)
        assert ctx.sqrt2.contains(mpmath.sqrt(2))
        assert ctx.pi.error_bound < mpf(2) ** -210


def test_bounded_value_invariants():
    with pytest.raises(ValueError):
        BoundedValue(1, -1)
    with pytest.raises(ValueError):
        BoundedValue(1, mpmath.inf)
    with pytest.raises(ValueError):
        BoundedValue(mpmath.nan, 0)


def test_certified_sign():
    assert BoundedValue(1, "0.5").certified_sign() == 1
    assert BoundedValue(-1, "0.5").certified_sign() == -1
    assert BoundedValue("0.1", "0.5").certified_sign() == 0


def test_exact_wrapping():
    assert exact(3).error_bound == 0
    assert exact(0.5).error_bound == 0
    third = exact("0.1", 128)
    assert third.error_bound > 0
    with mpmath.workprec(300):
        assert third.contains(mpf(1) / 10)


def test_division_by_enclosed_zero():
    with pytest.raises(ZeroDivisionError):
        exact(1) / BoundedValue(0, "1e-10")


def test_render_format():
    bv = zeta_real(2, PrecisionContext(128))
    text = render(bv)
    value, err = text.split(" ± ")
    assert len(value.replace("0.", "", 1).replace(".", "").lstrip("0")) == 39
    assert value.startswith("1.644934066848226436472415166646025189")
    assert "e-" in err
    assert str(bv) == text
    assert render(exact(1, 64)).endswith("± 0")


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.fractions(min_value=-100, max_value=100, max_denominator=10**6), min_size=2, max_size=6),
    st.lists(st.sampled_from(["add", "sub", "mul", "div", "sqrt"]), min_size=1, max_size=5),
)
def test_enclosure_soundness_against_double_precision(values, ops):
    """Chains of operations at 64 bits must enclose the 128-bit recomputation."""
    prec = 64
    with mpmath.workprec(prec + 16):
        xs = [exact(mpf(v.numerator) / v.denominator, prec) for v in values]
    refs = [x.value for x in xs]
    acc, ref = xs[0], refs[0]
    for i, op in enumerate(ops):
        x, r = xs[(i + 1) % len(xs)], refs[(i + 1) % len(refs)]
        with mpmath.workprec(2 * prec + 16):
            if op == "add":
                acc, ref = acc + x, ref + r
            elif op == "sub":
                acc, ref = acc - x, ref - r
            elif op == "mul":
                acc, ref = acc * x, ref * r
            elif op == "div":
                if x.contains(0):
                    continue
                acc, ref = acc / x, ref / r
            else:
                if acc.lower <= 0:
                    continue
                acc, ref = acc.sqrt(), mpmath.sqrt(ref)
    with mpmath.workprec(2 * prec + 16):
        assert abs(acc.value - ref) <= acc.error_bound
