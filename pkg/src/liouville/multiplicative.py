"""Point evaluation and segmented sieving of Omega(n), lambda(n) and mu(n).

Point functions factor by deterministic trial division. Bulk work goes
through :func:`sieve_segment`, which handles one contiguous block
``[lo, hi]`` using the primes up to ``sqrt(hi)``.
"""

from __future__ import annotations

import csv
import math
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

__all__ = [
    "DEFAULT_SEGMENT_LENGTH",
    "MAX_N",
    "SignSegment",
    "base_primes",
    "is_squarefree",
    "iter_segments",
    "lambda_point",
    "mu_point",
    "omega",
    "sieve_segment",
    "write_segment_csv",
]

DEFAULT_SEGMENT_LENGTH = 1 << 22
MAX_N = (1 << 64) - 1

_prime_lock = threading.Lock()
_prime_table = np.array([2, 3, 5, 7], dtype=np.int64)
_prime_limit = 10


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > MAX_N:
        raise ValueError(f"n={n} does not fit in 64 bits")
    return n


def base_primes(limit: int) -> np.ndarray:
    """Return all primes ``<= limit`` as an int64 array.

    The table is cached and grown on demand, so repeated calls for the
    segments of a long scan cost nothing after the first.
    """
    global _prime_table, _prime_limit
    limit = int(limit)
    if limit > _prime_limit:
        with _prime_lock:
            if limit > _prime_limit:
                new_limit = max(limit, 2 * _prime_limit, 1 << 16)
                is_prime = np.ones(new_limit + 1, dtype=bool)
                is_prime[:2] = False
                for i in range(2, math.isqrt(new_limit) + 1):
                    if is_prime[i]:
                        is_prime[i * i :: i] = False
                _prime_table = np.flatnonzero(is_prime).astype(np.int64)
                _prime_limit = new_limit
    table = _prime_table
    return table[: np.searchsorted(table, limit, side="right")]


def _factor_exponents(n: int) -> Iterator[int]:
    """Yield the exponent of each prime dividing ``n`` (trial division)."""
    root = math.isqrt(n)
    if root <= 1 << 20:
        candidates: Iterator[int] = iter(base_primes(root).tolist())
    else:
        candidates = _wheel_candidates()
    for p in candidates:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            yield e
    if n > 1:
        yield 1


def _wheel_candidates() -> Iterator[int]:
    yield 2
    yield 3
    k = 5
    while True:
        yield k
        yield k + 2
        k += 6


def omega(n: int) -> int:
    """Total number of prime factors of ``n`` counted with multiplicity."""
    return sum(_factor_exponents(_check_n(n)))


def lambda_point(n: int) -> int:
    """Liouville's function, ``(-1) ** omega(n)``."""
    return -1 if omega(n) & 1 else 1


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in _factor_exponents(_check_n(n)))


def mu_point(n: int) -> int:
    """Moebius function: ``lambda(n)`` on squarefree ``n``, else 0."""
    total = 0
    for e in _factor_exponents(_check_n(n)):
        if e > 1:
            return 0
        total += 1
    return -1 if total & 1 else 1


@dataclass(frozen=True, eq=False)
class SignSegment:
    """Values of lambda and mu over the closed range ``[lo, hi]``.

    ``lambda_vals[i]`` is ``lambda(lo + i)`` and ``mu_vals[i]`` is
    ``mu(lo + i)``; both are int8 arrays of length ``hi - lo + 1``.
    """

    lo: int
    hi: int
    lambda_vals: np.ndarray
    mu_vals: np.ndarray

    def __post_init__(self) -> None:
        if self.lo < 1 or self.hi < self.lo:
            raise ValueError(f"invalid segment bounds [{self.lo}, {self.hi}]")
        n = self.hi - self.lo + 1
        if self.lambda_vals.shape != (n,) or self.mu_vals.shape != (n,):
            raise ValueError("value arrays do not match the segment length")
        self.lambda_vals.setflags(write=False)
        self.mu_vals.setflags(write=False)

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignSegment):
            return NotImplemented
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and np.array_equal(self.lambda_vals, other.lambda_vals)
            and np.array_equal(self.mu_vals, other.mu_vals)
        )


def sieve_segment(
    lo: int, hi: int, max_length: int = DEFAULT_SEGMENT_LENGTH
) -> SignSegment:
    """Sieve lambda and mu over ``[lo, hi]``.

    Every prime power ``p**k <= hi`` with ``p <= sqrt(hi)`` adds one to a
    per-index factor counter and multiplies a per-index product of the
    factors found so far. An index whose product falls short of ``n`` has
    exactly one prime factor left over, larger than ``sqrt(hi)``.
    Squarefreeness is cleared at multiples of ``p**2``.

    Raises:
        ValueError: if ``lo < 1``, ``hi < lo``, ``hi`` exceeds 64 bits or
            the segment is longer than ``max_length``.
    """
    lo, hi = int(lo), int(hi)
    if lo < 1:
        raise ValueError(f"lo must be >= 1, got {lo}")
    if hi < lo:
        raise ValueError(f"inverted range: lo={lo} > hi={hi}")
    if hi >= 1 << 63:
        # the product array is int64
        raise ValueError(f"hi={hi} is beyond the sieve's int64 range")
    length = hi - lo + 1
    if length > max_length:
        raise ValueError(f"segment length {length} exceeds maximum {max_length}")

    count = np.zeros(length, dtype=np.uint8)
    found = np.ones(length, dtype=np.int64)
    squarefree = np.ones(length, dtype=bool)

    primes = base_primes(math.isqrt(hi))
    starts = (-lo) % primes
    hit = starts < length
    for p, start in zip(primes[hit].tolist(), starts[hit].tolist()):
        count[start::p] += 1
        found[start::p] *= p
        pk = p * p
        first_power = True
        while pk <= hi:
            start = (-lo) % pk
            if start >= length:
                break
            count[start::pk] += 1
            found[start::pk] *= p
            if first_power:
                squarefree[start::pk] = False
                first_power = False
            pk *= p

    n = np.arange(lo, hi + 1, dtype=np.int64)
    count += found != n
    lam = (1 - 2 * (count & 1)).astype(np.int8)
    mu = np.where(squarefree, lam, 0).astype(np.int8)
    return SignSegment(lo, hi, lam, mu)


def iter_segments(
    lo: int, hi: int, length: int = DEFAULT_SEGMENT_LENGTH
) -> Iterator[tuple[int, int]]:
    """Split ``[lo, hi]`` into consecutive closed ranges of at most ``length``."""
    if length < 1:
        raise ValueError("segment length must be positive")
    start = lo
    while start <= hi:
        stop = min(hi, start + length - 1)
        yield start, stop
        start = stop + 1


def write_segment_csv(segment: SignSegment, path: str | Path) -> None:
    """Write ``n,lambda,mu`` rows in ascending ``n``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "lambda", "mu"])
        writer.writerows(
            zip(
                range(segment.lo, segment.hi + 1),
                segment.lambda_vals.tolist(),
                segment.mu_vals.tolist(),
            )
        )
