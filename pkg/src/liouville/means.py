"""Lambda-weighted series and their certified identities with theta sums.

``s_minus(x) = sum lambda(n) / (exp(n pi x) - 1)`` equals ``phi(x)`` and
``s_plus(x) = sum lambda(n) / (exp(n pi x) + 1)`` equals
``phi(x) - 2 phi(2x)``, which behaves like ``1/2 - c / sqrt(x)`` as
``x -> 0`` with ``c = (sqrt(2) - 1) / 2``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mpf

from .multiplicative import sieve_segment
from .precision import GUARD_BITS, BoundedValue, PrecisionContext, exact, zeta_real
from .theta import phi, remainder_bound

__all__ = [
    "CROSSING_WIDTH",
    "NoSignChangeError",
    "Theorem1Constants",
    "dirichlet_partial_sum",
    "dirichlet_quotient_check",
    "dirichlet_tail_bound",
    "find_sign_crossing",
    "lambda_table",
    "mu_table",
    "s_minus",
    "s_plus",
    "series_terms",
    "step1_residual",
    "step2_residual",
    "theorem1_constants",
    "theorem1_remainder",
    "theorem1_residual",
]

CROSSING_WIDTH = mpf(2) ** -40


class NoSignChangeError(ValueError):
    """A bracket whose endpoints do not carry certified opposite signs."""


_table_lock = threading.Lock()
_tables: dict[str, np.ndarray] = {
    "lambda": np.zeros(1, dtype=np.int8),
    "mu": np.zeros(1, dtype=np.int8),
}


def _table(kind: str, n: int) -> np.ndarray:
    """int8 values at indices ``0..n`` (index 0 unused), grown on demand."""
    table = _tables[kind]
    if len(table) <= n:
        with _table_lock:
            table = _tables[kind]
            if len(table) <= n:
                size = max(n, 2 * (len(table) - 1), 4096)
                seg = sieve_segment(1, size, max_length=size)
                for key, vals in (("lambda", seg.lambda_vals), ("mu", seg.mu_vals)):
                    arr = np.concatenate([np.zeros(1, dtype=np.int8), vals])
                    arr.setflags(write=False)
                    _tables[key] = arr
                table = _tables[kind]
    return table[: n + 1]


def lambda_table(n: int) -> np.ndarray:
    """``lambda(k)`` at index ``k`` for ``0 < k <= n``."""
    return _table("lambda", n)


def mu_table(n: int) -> np.ndarray:
    """``mu(k)`` at index ``k`` for ``0 < k <= n``."""
    return _table("mu", n)


@dataclass(frozen=True)
class Theorem1Constants:
    """``c = (sqrt(2) - 1) / 2`` and the exact constant term ``1/2``."""

    c: BoundedValue
    half: BoundedValue


def theorem1_constants(ctx: PrecisionContext | None = None) -> Theorem1Constants:
    ctx = ctx or PrecisionContext()
    return Theorem1Constants(c=(ctx.sqrt2 - 1) / 2, half=exact(0.5, ctx.precision_bits))


def _positive_argument(x, ctx: PrecisionContext) -> mpf:
    with ctx.workprec(GUARD_BITS):
        x = x.value if isinstance(x, BoundedValue) else mpf(x)
        if not (mpmath.isfinite(x) and x > 0):
            raise ValueError(f"x must be finite and > 0, got {x}")
        return x


def series_terms(x, ctx: PrecisionContext) -> int:
    """Term count ``ceil(((prec + 8) ln 2 + ln(1 / (1 - exp(-pi x)))) / (pi x))``."""
    x = _positive_argument(x, ctx)
    with ctx.workprec(GUARD_BITS):
        pi_x = mpmath.pi * x
        need = (ctx.precision_bits + 8) * mpmath.ln2 - mpmath.log(-mpmath.expm1(-pi_x))
        return max(1, int(mpmath.ceil(need / pi_x)))


def _lambda_series(x, ctx: PrecisionContext, sign: int) -> BoundedValue:
    x = _positive_argument(x, ctx)
    N = series_terms(x, ctx)
    if N > ctx.max_terms:
        raise ValueError(f"series at x={mpmath.nstr(x, 6)} needs {N} terms, above max_terms={ctx.max_terms}")
    lam = lambda_table(N)
    prec = ctx.precision_bits
    with ctx.workprec(GUARD_BITS):
        pi_x = mpmath.pi * x
        if sign < 0:
            terms = [1 / mpmath.expm1(n * pi_x) for n in range(1, N + 1)]
        else:
            terms = [1 / (mpmath.exp(n * pi_x) + 1) for n in range(1, N + 1)]
        total = mpmath.fsum(t if lam[n] > 0 else -t for n, t in enumerate(terms, start=1))
        magnitude = mpmath.fsum(terms)
        q = mpmath.exp(-(N + 1) * pi_x)
        geometric = q / -mpmath.expm1(-pi_x)
        # for e^{n pi x} >= 2, 1/(e^{n pi x} - 1) <= 2 e^{-n pi x}
        tail = 2 * geometric if sign < 0 else geometric
        # an exponent off by a relative u moves 1/(e^a -+ 1) by at most
        # a u / (1 - e^{-a}) relative, largest at the last term
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (N + 8 + 3 * N * pi_x / -mpmath.expm1(-pi_x)) * u * magnitude
        return BoundedValue(total, (tail + rounding) * (1 + mpf(2) ** -40), prec)


def s_minus(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n>=1} lambda(n) / (exp(n pi x) - 1)`` with tail ``2 e^{-(N+1) pi x} / (1 - e^{-pi x})``."""
    return _lambda_series(x, ctx or PrecisionContext(), -1)


def s_plus(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n>=1} lambda(n) / (exp(n pi x) + 1)`` with tail ``e^{-(N+1) pi x} / (1 - e^{-pi x})``."""
    return _lambda_series(x, ctx or PrecisionContext(), +1)


def step1_residual(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``s_minus(x) - phi(x)``; the enclosure should contain 0."""
    ctx = ctx or PrecisionContext()
    return s_minus(x, ctx) - phi(x, ctx)


def step2_residual(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``s_plus(x) - (phi(x) - 2 phi(2x))``; the enclosure should contain 0."""
    ctx = ctx or PrecisionContext()
    x = _positive_argument(x, ctx)
    with ctx.workprec(GUARD_BITS):
        x2 = 2 * x
    return s_plus(x, ctx) - (phi(x, ctx) - 2 * phi(x2, ctx))


def _unit_interval(x, ctx: PrecisionContext) -> mpf:
    x = _positive_argument(x, ctx)
    if x > 1:
        raise ValueError(f"x must lie in (0, 1], got {x}")
    return x


def _main_term(x: mpf, ctx: PrecisionContext) -> BoundedValue:
    k = theorem1_constants(ctx)
    return k.half - k.c / exact(x, ctx.precision_bits).sqrt()


def theorem1_residual(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``s_plus(x) - (1/2 - c / sqrt(x))`` for ``0 < x <= 1``.

    Its magnitude should not exceed ``remainder_bound(x)`` plus the
    evaluation error.
    """
    ctx = ctx or PrecisionContext()
    x = _unit_interval(x, ctx)
    return s_plus(x, ctx) - _main_term(x, ctx)


def theorem1_remainder(x, ctx: PrecisionContext | None = None) -> BoundedValue:
    """The exact remainder ``(phi(1/x) - sqrt(2) phi(1/(2x))) / sqrt(x)``, from theta sums."""
    ctx = ctx or PrecisionContext()
    x = _unit_interval(x, ctx)
    prec = ctx.precision_bits
    xb = exact(x, prec + GUARD_BITS)
    a = phi(1 / xb, ctx)
    b = phi(1 / (2 * xb), ctx)
    return (a - ctx.sqrt2 * b) / exact(x, prec).sqrt()


def _certified_sign(x: mpf, ctx: PrecisionContext, escalations: int = 3) -> int:
    for step in range(escalations + 1):
        sign = s_plus(x, ctx.with_precision(ctx.precision_bits + 64 * step)).certified_sign()
        if sign:
            return sign
    raise ArithmeticError(
        f"sign of s_plus({mpmath.nstr(x, 20)}) not certified after {escalations} precision escalations"
    )


def find_sign_crossing(
    lo, hi, ctx: PrecisionContext | None = None, width=CROSSING_WIDTH
) -> tuple[mpf, mpf]:
    """Bisect a certified sign change of ``s_plus`` on ``[lo, hi]``.

    Only signs whose whole enclosure is one-signed are used; an uncertain
    midpoint triggers up to three precision increases of 64 bits.

    Returns:
        ``(a, b)`` with ``b - a <= width``, ``s_plus(a) < 0 < s_plus(b)``.

    Raises:
        NoSignChangeError: the endpoints are not certified negative and
            positive respectively.
    """
    ctx = ctx or PrecisionContext()
    a = _positive_argument(lo, ctx)
    b = _positive_argument(hi, ctx)
    if not (a < b <= 1):
        raise ValueError(f"need 0 < lo < hi <= 1, got lo={a}, hi={b}")
    sa, sb = _certified_sign(a, ctx), _certified_sign(b, ctx)
    if not (sa < 0 < sb):
        raise NoSignChangeError(
            f"s_plus has certified signs {sa:+d} at lo and {sb:+d} at hi; no sign change bracketed"
        )
    with ctx.workprec(GUARD_BITS):
        while b - a > width:
            mid = (a + b) / 2
            if _certified_sign(mid, ctx) < 0:
                a = mid
            else:
                b = mid
    return a, b


def dirichlet_partial_sum(s, N: int, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n <= N} lambda(n) / n**s`` with its rounding bound."""
    ctx = ctx or PrecisionContext()
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    lam = lambda_table(N)
    prec = ctx.precision_bits
    with ctx.workprec(GUARD_BITS):
        s = mpf(s)
        if not s > 1:
            raise ValueError(f"s must be > 1, got {s}")
        positive = mpmath.fsum(mpf(int(n)) ** -s for n in np.flatnonzero(lam > 0))
        negative = mpmath.fsum(mpf(int(n)) ** -s for n in np.flatnonzero(lam < 0))
        value = positive - negative
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (N + 8) * u * (positive + negative)
        return BoundedValue(value, rounding * (1 + mpf(2) ** -40), prec)


def dirichlet_tail_bound(s, N: int) -> float:
    """``2 N**(1 - s) / (s - 1)``, a bound on the omitted part of the partial sum."""
    s = float(s)
    return 2.0 * float(N) ** (1.0 - s) / (s - 1.0)


def dirichlet_quotient_check(s, N: int, ctx: PrecisionContext | None = None) -> BoundedValue:
    """``sum_{n<=N} lambda(n) n^-s - zeta(2s) / zeta(s)``.

    The error bound covers evaluation only; the value itself is the
    truncation error, expected below :func:`dirichlet_tail_bound`.
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec(GUARD_BITS):
        s = mpf(s)
        if not s > 1:
            raise ValueError(f"s must be > 1, got {s}")
        s2 = 2 * s
    return dirichlet_partial_sum(s, N, ctx) - zeta_real(s2, ctx) / zeta_real(s, ctx)

