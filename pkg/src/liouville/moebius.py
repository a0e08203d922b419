"""Moebius-weighted Lambert series and the partial-fraction identity behind them.

For ``|x| < 1``::

    sum mu(n) x^n / (1 - x^n) = x
    sum mu(n) x^n / (1 + x^n) = x - 2 x^2

The second follows from the first through
``1/(z+1) = 1/(z-1) - 2/(z^2-1)``; at ``x = 1/2`` it gives
``sum mu(n) / (2^n + 1) = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np
from mpmath import mpf

from .means import mu_table
from .precision import GUARD_BITS, BoundedValue, PrecisionContext

__all__ = [
    "LAMBERT_EDGE",
    "corollary_half",
    "corollary_partial_exact",
    "limit_probe",
    "mobius_lambert_classic",
    "mobius_plus_series",
    "mobius_reciprocal_sum",
    "partial_fraction_identity_exact",
]

# the term budget grows like 1/(1 - |x|); stay this far from the unit circle
LAMBERT_EDGE = mpf(10) ** -6


def partial_fraction_identity_exact(z) -> bool:
    """Check ``1/(z+1) == 1/(z-1) - 2/(z^2-1)`` in exact rational arithmetic.

    ``z`` may be an int, a :class:`~fractions.Fraction` or anything
    ``Fraction`` accepts (e.g. ``"5/2"``).

    Raises:
        ValueError: ``z`` is ``1`` or ``-1``.
    """
    z = Fraction(z)
    if z in (1, -1):
        raise ValueError(f"z = {z} is a pole of the identity")
    return 1 / (z + 1) == 1 / (z - 1) - 2 / (z * z - 1)


def _as_fraction(x: mpf) -> Fraction:
    man, exp = x.man_exp
    return Fraction(man) * Fraction(2) ** exp if man else Fraction(0)


def _real(x) -> mpf | Fraction | float | int:
    return Fraction(x) if isinstance(x, str) else x


def _to_mpf(x) -> mpf:
    x = _real(x)
    return mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x)


def _lambert_argument(x, ctx: PrecisionContext) -> tuple[mpf, mpf]:
    """The working-precision ``x`` and a bound on how far it is from the input."""
    with ctx.workprec(GUARD_BITS):
        raw = _real(x)
        x = _to_mpf(raw)
        if not abs(x) < 1 - LAMBERT_EDGE:
            raise ValueError(f"|x| must be below 1 - 1e-6, got x={x}")
        exact_input = not isinstance(raw, Fraction) or _as_fraction(x) == raw
        delta = mpf(0) if exact_input else abs(x) * mpf(2) ** (1 - ctx.precision_bits - GUARD_BITS)
        return x, delta


def _lambert_terms(x: mpf, ctx: PrecisionContext) -> int:
    """``ceil((prec + 8) ln 2 / ln(1/|x|))``."""
    with ctx.workprec(GUARD_BITS):
        N = int(mpmath.ceil((ctx.precision_bits + 8) * mpmath.ln2 / -mpmath.log(abs(x))))
    if N > ctx.max_terms:
        raise ValueError(f"Lambert series at x={mpmath.nstr(x, 8)} needs {N} terms, above max_terms={ctx.max_terms}")
    return N


def _mobius_lambert(x, ctx: PrecisionContext, sign: int) -> BoundedValue:
    """``sum mu(n) x^n / (1 - sign * x^n)``; sign=+1 classic, -1 the plus form."""
    x, delta = _lambert_argument(x, ctx)
    prec = ctx.precision_bits
    if x == 0:
        return BoundedValue(mpf(0), mpf(0), prec)
    N = _lambert_terms(x, ctx)
    mu = mu_table(N)
    support = np.flatnonzero(mu[1:]) + 1
    with ctx.workprec(GUARD_BITS):
        ax = abs(x)
        terms = []
        for n in support.tolist():
            p = x**n
            t = p / (1 - p) if sign > 0 else p / (1 + p)
            terms.append(t if mu[n] > 0 else -t)
        total = mpmath.fsum(terms)
        magnitude = mpmath.fsum(abs(t) for t in terms)
        # |x^n / (1 -+ x^n)| <= |x|^n / (1 - |x|^n) <= |x|^n / (1 - |x|^N) past N
        tail = ax ** (N + 1) / ((1 - ax) * (1 - ax**N))
        # a rounded x^n moves p/(1 -+ p) by u |t| / |1 -+ p| <= u |t| / (1 - |x|)
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (N + 8 + 2 / (1 - ax)) * u * magnitude
        # both series have derivative at most sum n r^(n-1) / (1 - r)^2 = 1/(1 - r)^4
        spread = delta / (1 - ax - delta) ** 4 if delta else mpf(0)
        return BoundedValue(total, (tail + rounding + spread) * (1 + mpf(2) ** -40), prec)


def mobius_lambert_classic(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n>=1} mu(n) x^n / (1 - x^n)``, which sums to ``x``.

    ``x`` may be a decimal string or a Fraction; rounding it to working
    precision is then charged to the error bound.

    Raises:
        ValueError: ``|x| >= 1 - 1e-6``.
    """
    return _mobius_lambert(x, ctx or PrecisionContext(), +1)


def mobius_plus_series(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n>=1} mu(n) x^n / (x^n + 1)``, which sums to ``x - 2 x^2``.

    Raises:
        ValueError: ``|x| >= 1 - 1e-6``.
    """
    return _mobius_lambert(x, ctx or PrecisionContext(), -1)


def mobius_reciprocal_sum(y, sign: int, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n>=1} mu(n) / (y^n + sign)`` for ``|y| > 1``, ``sign`` in ``{+1, -1}``.

    With ``x = 1/y`` the ``+1`` case is :func:`mobius_plus_series` and the
    ``-1`` case is :func:`mobius_lambert_classic`; computed here directly
    in ``y`` to cross-check them.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ctx = ctx or PrecisionContext()
    prec = ctx.precision_bits
    with ctx.workprec(GUARD_BITS):
        y = mpf(y)
        if not abs(y) > 1 / (1 - LAMBERT_EDGE):
            raise ValueError(f"|y| must exceed 1/(1 - 1e-6), got y={y}")
        N = _lambert_terms(1 / y, ctx)
        mu = mu_table(N)
        terms = []
        for n in (np.flatnonzero(mu[1:]) + 1).tolist():
            t = 1 / (y**n + sign)
            terms.append(t if mu[n] > 0 else -t)
        total = mpmath.fsum(terms)
        magnitude = mpmath.fsum(abs(t) for t in terms)
        r = 1 / abs(y)
        tail = r ** (N + 1) / ((1 - r) * (1 - r**N))
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (N + 8 + 2 / (1 - r)) * u * magnitude
        return BoundedValue(total, (tail + rounding) * (1 + mpf(2) ** -40), prec)


def limit_probe(xs: Iterable, ctx: PrecisionContext | None = None) -> list[BoundedValue]:
    """Evaluate :func:`mobius_plus_series` along ``xs``, which should climb towards 1.

    The exact values ``x - 2x^2`` tend to ``-1``.

    Raises:
        ValueError: any ``x`` outside ``(0, 1 - 1e-6)``.
    """
    ctx = ctx or PrecisionContext()
    xs = list(xs)
    for x in xs:
        with ctx.workprec(GUARD_BITS):
            if not 0 < _to_mpf(x) < 1 - LAMBERT_EDGE:
                raise ValueError(f"limit probe points must lie in (0, 1 - 1e-6), got {x}")
    return [mobius_plus_series(x, ctx) for x in xs]


def corollary_half(ctx: PrecisionContext | None = None, terms: int | None = None) -> BoundedValue:
    """``sum_{n<=N} mu(n) / (2^n + 1)`` with the tail ``2^-N`` in the error bound.

    ``N`` defaults to ``precision_bits + 32``; the default context here is
    256 bits. The full series sums to 0.
    """
    ctx = ctx or PrecisionContext(precision_bits=256)
    prec = ctx.precision_bits
    N = prec + 32 if terms is None else int(terms)
    if N < 1:
        raise ValueError(f"terms must be >= 1, got {N}")
    mu = mu_table(N)
    with ctx.workprec(GUARD_BITS):
        pieces = [mpf(int(mu[n])) / (mpf(2) ** n + 1) for n in range(1, N + 1) if mu[n]]
        total = mpmath.fsum(pieces)
        magnitude = mpmath.fsum(abs(t) for t in pieces)
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        tail = mpf(2) ** -N
        return BoundedValue(total, (tail + (N + 4) * u * magnitude) * (1 + mpf(2) ** -40), prec)


def corollary_partial_exact(N: int) -> Fraction:
    """``sum_{n<=N} mu(n) / (2^n + 1)`` as an exact rational."""
    mu = mu_table(int(N))
    return sum((Fraction(int(mu[n]), 2**n + 1) for n in range(1, int(N) + 1) if mu[n]), Fraction(0))
