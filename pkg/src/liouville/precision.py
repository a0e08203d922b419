"""Extended-precision values with rigorous error bounds, and real zeta.

Values are mpmath ``mpf`` numbers. A :class:`BoundedValue` pairs one with
a bound on its total error; arithmetic between bounded values propagates
those bounds affinely and charges one rounding of ``2**(1 - prec)``
relative per operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property

import mpmath
from mpmath import mpf

__all__ = [
    "GUARD_BITS",
    "BoundedValue",
    "PrecisionContext",
    "exact",
    "render",
    "zeta_real",
]

GUARD_BITS = 16
# applied to every computed error bound so that rounding inside the bound
# arithmetic itself can only make it larger
_UP = 1 + mpf(2) ** -40


def _up(x) -> mpf:
    return x * _UP


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision (binary digits) and a cap on series length."""

    precision_bits: int = 128
    max_terms: int = 1_000_000

    def __post_init__(self) -> None:
        if self.precision_bits < 53:
            raise ValueError(f"precision_bits must be >= 53, got {self.precision_bits}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")

    @property
    def unit(self) -> mpf:
        """Relative rounding error charged per floating operation."""
        return mpf(2) ** (1 - self.precision_bits)

    def workprec(self, extra: int = 0):
        return mpmath.workprec(self.precision_bits + extra)

    def with_precision(self, bits: int) -> PrecisionContext:
        return replace(self, precision_bits=bits)

    @cached_property
    def pi(self) -> BoundedValue:
        with self.workprec(GUARD_BITS):
            v = +mpmath.pi
        return BoundedValue(v, abs(v) * mpf(2) ** (1 - self.precision_bits - GUARD_BITS), self.precision_bits)

    @cached_property
    def sqrt2(self) -> BoundedValue:
        with self.workprec(GUARD_BITS):
            v = mpmath.sqrt(2)
        return BoundedValue(v, abs(v) * mpf(2) ** (1 - self.precision_bits - GUARD_BITS), self.precision_bits)


@dataclass(frozen=True)
class BoundedValue:
    """A value whose true counterpart lies in ``[value - error_bound, value + error_bound]``.

    ``precision_bits`` is the precision at which further arithmetic on the
    value is carried out.
    """

    value: mpf
    error_bound: mpf
    precision_bits: int = 128

    def __post_init__(self) -> None:
        # mpf() rounds to the ambient precision, so never re-wrap an mpf
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            if not isinstance(self.value, mpf):
                object.__setattr__(self, "value", mpf(self.value))
            if not isinstance(self.error_bound, mpf):
                object.__setattr__(self, "error_bound", mpf(self.error_bound))
        if not mpmath.isfinite(self.error_bound) or self.error_bound < 0:
            raise ValueError(f"error bound must be finite and nonnegative, got {self.error_bound}")
        if not mpmath.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value}")

    # mpf arithmetic rounds to the ambient precision, hence the workprec blocks

    @property
    def lower(self) -> mpf:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return self.value - self.error_bound

    @property
    def upper(self) -> mpf:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return self.value + self.error_bound

    def contains(self, x) -> bool:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return abs(mpf(x) - self.value) <= self.error_bound

    def certified_sign(self) -> int:
        """+1 or -1 if the whole enclosure is one-signed, else 0."""
        if self.value > self.error_bound:
            return 1
        if -self.error_bound > self.value:
            return -1
        return 0

    def _coerce(self, other) -> BoundedValue:
        if isinstance(other, BoundedValue):
            return other
        return exact(other, self.precision_bits)

    def _rounded(self, value, err, prec: int) -> BoundedValue:
        err = err + abs(value) * mpf(2) ** (1 - prec)
        return BoundedValue(value, _up(err), prec)

    def __add__(self, other) -> BoundedValue:
        other = self._coerce(other)
        prec = max(self.precision_bits, other.precision_bits)
        with mpmath.workprec(prec):
            v = self.value + other.value
            return self._rounded(v, self.error_bound + other.error_bound, prec)

    __radd__ = __add__

    def __neg__(self) -> BoundedValue:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return BoundedValue(-self.value, self.error_bound, self.precision_bits)

    def __sub__(self, other) -> BoundedValue:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> BoundedValue:
        return self._coerce(other) - self

    def __mul__(self, other) -> BoundedValue:
        other = self._coerce(other)
        prec = max(self.precision_bits, other.precision_bits)
        with mpmath.workprec(prec):
            v = self.value * other.value
            err = (
                abs(self.value) * other.error_bound
                + abs(other.value) * self.error_bound
                + self.error_bound * other.error_bound
            )
            return self._rounded(v, err, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> BoundedValue:
        other = self._coerce(other)
        prec = max(self.precision_bits, other.precision_bits)
        with mpmath.workprec(prec):
            margin = abs(other.value) - other.error_bound
            if margin <= 0:
                raise ZeroDivisionError("divisor enclosure contains zero")
            v = self.value / other.value
            err = (self.error_bound + abs(v) * other.error_bound) / margin
            return self._rounded(v, err, prec)

    def __rtruediv__(self, other) -> BoundedValue:
        return self._coerce(other) / self

    def __abs__(self) -> BoundedValue:
        with mpmath.workprec(self.precision_bits + GUARD_BITS):
            return replace(self, value=abs(self.value))

    def sqrt(self) -> BoundedValue:
        prec = self.precision_bits
        with mpmath.workprec(prec):
            if self.lower <= 0:
                raise ValueError("sqrt of an enclosure reaching zero or below")
            v = mpmath.sqrt(self.value)
            # |sqrt(a) - sqrt(b)| <= |a - b| / (sqrt(a) + sqrt(b))
            err = self.error_bound / (v + mpmath.sqrt(self.lower))
            return self._rounded(v, err, prec)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return render(self)


def exact(x, precision_bits: int = 128) -> BoundedValue:
    """Wrap a number; the error is nonzero only if it had to be rounded."""
    with mpmath.workprec(precision_bits + GUARD_BITS):
        v = mpf(x)
        representable = isinstance(x, (int, float, mpf)) and v == x
        err = mpf(0) if representable else abs(v) * mpf(2) ** (-precision_bits - GUARD_BITS)
    return BoundedValue(v, err, precision_bits)


def render(bv: BoundedValue) -> str:
    """Decimal rendering, e.g. ``'0.123313 ± 3.1e-38'``."""
    digits = math.ceil(bv.precision_bits * 0.301)
    with mpmath.workprec(bv.precision_bits + GUARD_BITS):
        value = mpmath.nstr(bv.value, digits, strip_zeros=False)
    err = mpmath.nstr(bv.error_bound, 2, min_fixed=0, max_fixed=0) if bv.error_bound else "0"
    return f"{value} ± {err}"


def _zeta_tail_terms(s: mpf, N: int, target: mpf, max_order: int):
    """Euler-Maclaurin correction terms at ``N``; returns (sum, first omitted)."""
    total = mpf(0)
    rising = s  # s(s+1)...(s+2k-2)
    power = mpf(N) ** (-s - 1)  # N^(-s-2k+1)
    inv_n2 = mpf(N) ** -2
    prev = None
    for k in range(1, max_order + 1):
        term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising * power
        if abs(term) <= target:
            return total, abs(term)
        if prev is not None and abs(term) >= prev:
            return None
        total += term
        prev = abs(term)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power *= inv_n2
    return None


def zeta_real(s, ctx: PrecisionContext | None = None) -> BoundedValue:
    """Riemann zeta at real ``s > 1`` by Euler-Maclaurin summation.

    Direct summation runs to ``N - 1`` with ``N = max(20, precision_bits)``,
    and Bernoulli correction terms are added until the first omitted one
    drops below ``2**-(precision_bits + 8)``. For ``x**-s`` every even
    derivative is positive, so the remainder is bounded by that first
    omitted term. ``N`` is doubled if the asymptotic terms start growing
    before reaching the target.

    Raises:
        ValueError: for ``s <= 1 + 1e-6``.
    """
    ctx = ctx or PrecisionContext()
    prec = ctx.precision_bits
    with ctx.workprec(GUARD_BITS):
        s = mpf(s)
        if not s > 1 + mpf(10) ** -6:
            raise ValueError(f"zeta_real requires s > 1 + 1e-6, got {s}")
        N = max(20, prec)
        while True:
            if N > ctx.max_terms:
                raise ValueError(f"zeta_real needs more than max_terms={ctx.max_terms} terms")
            head = mpmath.fsum(mpf(n) ** -s for n in range(1, N))
            integral = mpf(N) ** (1 - s) / (s - 1)
            half = mpf(N) ** -s / 2
            approx = head + integral + half
            found = _zeta_tail_terms(s, N, abs(approx) * mpf(2) ** (-prec - 8), 4 * prec)
            if found is not None:
                break
            N *= 2
        corrections, remainder = found
        value = approx + corrections
        u = mpf(2) ** (1 - prec - GUARD_BITS)
        rounding = (2 * N + 4 * prec + 10) * u * abs(value)
        return BoundedValue(value, _up(remainder + rounding), prec)
