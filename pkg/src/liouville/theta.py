"""Jacobi theta sums ``phi(x) = sum_{k>=1} exp(-k^2 pi x)`` and ``theta = 1 + 2 phi``."""

from __future__ import annotations

import math

import mpmath
from mpmath import mpf

from .precision import GUARD_BITS, BoundedValue, PrecisionContext, exact

__all__ = [
    "FUNCTIONAL_EQUATION_CUTOFF",
    "phi",
    "remainder_bound",
    "theta",
    "theta_functional_residual",
]

# below this x, phi is evaluated at 1/x and mapped back
FUNCTIONAL_EQUATION_CUTOFF = 1e-4


def _argument(x, ctx: PrecisionContext) -> mpf:
    with ctx.workprec(GUARD_BITS):
        x = x.value if isinstance(x, BoundedValue) else mpf(x)
        if not (mpmath.isfinite(x) and x > 0):
            raise ValueError(f"theta argument must be finite and > 0, got {x}")
        return x


def _phi_direct(x: mpf, ctx: PrecisionContext) -> BoundedValue:
    prec = ctx.precision_bits
    with ctx.workprec(GUARD_BITS):
        pi_x = mpmath.pi * x
        target = (prec + 8) * mpmath.ln2
        # least K with K^2 pi x > target
        K = int(mpmath.floor(mpmath.sqrt(target / pi_x))) + 1
        while (K - 1) >= 1 and (K - 1) ** 2 * pi_x > target:
            K -= 1
        if K > ctx.max_terms:
            raise ValueError(
                f"phi({mpmath.nstr(x, 6)}) needs {K} terms, above max_terms={ctx.max_terms}"
            )
        total = mpmath.fsum(mpmath.exp(-(k * k) * pi_x) for k in range(1, K + 1))
        tail = mpmath.exp(-((K + 1) ** 2) * pi_x) / (1 - mpmath.exp(-(2 * K + 3) * pi_x))
        # each exponent carries a relative error of a few units, scaled by
        # its size; the sum of K positive terms adds K more
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (K + 3 * K * K * pi_x + 8) * u * total
        return BoundedValue(total, (tail + rounding) * (1 + mpf(2) ** -40), prec)


def _phi_enclosed(y: BoundedValue, ctx: PrecisionContext) -> BoundedValue:
    """phi at an argument known only to within ``y.error_bound``."""
    direct = _phi_direct(y.value, ctx)
    if not y.error_bound:
        return direct
    with ctx.workprec(GUARD_BITS):
        y_min = y.value - y.error_bound
        if y_min <= 0:
            raise ValueError("theta argument enclosure reaches zero")
        # |phi'(y)| <= pi * sum k^2 q^k = pi q (1 + q) / (1 - q)^3, q = e^{-pi y}
        q = mpmath.exp(-mpmath.pi * y_min)
        slope = mpmath.pi * q * (1 + q) / (1 - q) ** 3
        spread = slope * y.error_bound * (1 + mpf(2) ** -40)
    return BoundedValue(direct.value, direct.error_bound + spread, direct.precision_bits)


def _reciprocal(x: mpf, ctx: PrecisionContext) -> BoundedValue:
    return 1 / exact(x, ctx.precision_bits + GUARD_BITS)


def phi(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{k>=1} exp(-k^2 pi x)`` with a rigorous truncation and rounding bound.

    ``x`` is taken exactly as the mpf it converts to, unless it is a
    :class:`BoundedValue` with nonzero error, whose spread is then
    propagated through a bound on ``|phi'|``. The sum stops at the
    least ``K`` with ``K^2 pi x > (prec + 8) ln 2``; the tail past ``K`` is
    at most ``exp(-(K+1)^2 pi x) / (1 - exp(-(2K+3) pi x))``. For
    ``x < 1e-4`` the value is taken from ``theta(1/x) / sqrt(x)``.

    Raises:
        ValueError: ``x <= 0`` or more than ``ctx.max_terms`` terms needed.
    """
    ctx = ctx or PrecisionContext()
    if isinstance(x, BoundedValue) and x.error_bound:
        _argument(x, ctx)
        return _phi_enclosed(x, ctx)
    x = _argument(x, ctx)
    if x < FUNCTIONAL_EQUATION_CUTOFF:
        outer = 1 + 2 * _phi_enclosed(_reciprocal(x, ctx), ctx)
        return (outer / exact(x, ctx.precision_bits).sqrt() - 1) / 2
    return _phi_direct(x, ctx)


def theta(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{k in Z} exp(-k^2 pi x) = 1 + 2 phi(x)``; always greater than 1."""
    ctx = ctx or PrecisionContext()
    return 1 + 2 * phi(x, ctx)


def theta_functional_residual(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``theta(x) - theta(1/x) / sqrt(x)``, both sides summed directly.

    Mathematically zero, so the enclosure should contain 0.
    """
    ctx = ctx or PrecisionContext()
    x = _argument(x, ctx)
    lhs = 1 + 2 * _phi_direct(x, ctx)
    rhs = (1 + 2 * _phi_enclosed(_reciprocal(x, ctx), ctx)) / exact(x, ctx.precision_bits).sqrt()
    return lhs - rhs


def remainder_bound(x: float) -> float:
    """Upper bound ``3 exp(-pi / (2x)) / sqrt(x)`` on the theta remainder for ``0 < x <= 1``.

    Bounds ``|(phi(1/x) - sqrt(2) phi(1/(2x))) / sqrt(x)|`` using
    ``phi(y) <= 1.05 exp(-pi y)`` for ``y >= 1/2``.
    """
    x = float(x)
    if not 0 < x <= 1:
        raise ValueError(f"remainder_bound requires 0 < x <= 1, got {x}")
    return 3.0 * math.exp(-math.pi / (2.0 * x)) / math.sqrt(x)
