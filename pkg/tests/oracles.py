"""Independent reference implementations used only by the tests.

None of these share code with the package: factorisation is naive trial
division by every integer, theta values come from mpmath's ``jtheta``,
zeta from ``mpmath.zeta``.
"""

from __future__ import annotations

import mpmath


def factor_exponents(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append(e)
        d += 1
    if n > 1:
        out.append(1)
    return out


def big_omega(n: int) -> int:
    return sum(factor_exponents(n))


def liouville(n: int) -> int:
    return (-1) ** big_omega(n)


def moebius(n: int) -> int:
    exps = factor_exponents(n)
    if any(e > 1 for e in exps):
        return 0
    return (-1) ** len(exps)


def summatory_table(n_max: int) -> tuple[list[int], list[int]]:
    """L(n), M(n) for n = 0..n_max (index 0 is 0)."""
    L, M = [0], [0]
    for n in range(1, n_max + 1):
        L.append(L[-1] + liouville(n))
        M.append(M[-1] + moebius(n))
    return L, M


def phi_ref(x, prec: int = 400):
    with mpmath.workprec(prec):
        x = mpmath.mpf(x)
        return (mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi * x)) - 1) / 2


def zeta_ref(s, prec: int = 400):
    with mpmath.workprec(prec):
        return mpmath.zeta(mpmath.mpf(s))
