"""Named verification suites over the certified series.

Each suite returns a list of :class:`Check` records; a check passes only
when every bound it asserts holds. Numbers in ``detail`` are decimal
strings so they survive JSON at any precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .means import (
    dirichlet_quotient_check,
    dirichlet_tail_bound,
    s_plus,
    step1_residual,
    step2_residual,
    theorem1_residual,
)
from .moebius import corollary_half, limit_probe, mobius_lambert_classic, mobius_plus_series
from .precision import BoundedValue, PrecisionContext, render
from .theta import remainder_bound, theta_functional_residual

__all__ = ["SUITES", "Check", "run_suite", "tolerance"]

IDENTITY_GRID = ("0.1", "0.25", "0.5", "1", "2")
THEOREM1_GRID = ("0.05", "0.1", "0.2", "0.5")
THETA_GRID = ("0.1", "0.3", "1", "3", "10")
LEMMA2_GRID = ("-0.5", "0.1", "0.3", "0.5", "0.9")
PROBE = (("0.9", "-0.72"), ("0.99", "-0.9702"))


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def tolerance(ctx: PrecisionContext) -> mpf:
    """Ceiling on combined error bounds: ``1e-30`` at 128 bits, scaled by ``2**(128 - prec)``."""
    return mpf("1e-30") * mpf(2) ** (128 - ctx.precision_bits)


def _s(x) -> str:
    return mpmath.nstr(mpf(x), 12, min_fixed=-4, max_fixed=4)


def _zero_check(name: str, r: BoundedValue, tol: mpf) -> Check:
    ok = r.contains(0) and r.error_bound <= tol
    return Check(name, bool(ok), {"residual": render(r), "tolerance": _s(tol)})


def _exact_decimal(x: str):
    q = Fraction(x)
    return mpf(q.numerator) / q.denominator


def step1(ctx: PrecisionContext) -> list[Check]:
    tol = tolerance(ctx)
    return [_zero_check(f"step1 x={x}", step1_residual(x, ctx), tol) for x in IDENTITY_GRID]


def step2(ctx: PrecisionContext) -> list[Check]:
    tol = tolerance(ctx)
    return [_zero_check(f"step2 x={x}", step2_residual(x, ctx), tol) for x in IDENTITY_GRID]


def theta_fe(ctx: PrecisionContext) -> list[Check]:
    tol = tolerance(ctx)
    return [_zero_check(f"theta-fe x={x}", theta_functional_residual(x, ctx), tol) for x in THETA_GRID]


def theorem1(ctx: PrecisionContext) -> list[Check]:
    tol = tolerance(ctx)
    checks = []
    for x in THEOREM1_GRID:
        r = theorem1_residual(x, ctx)
        bound = mpf(remainder_bound(float(x)))
        with ctx.workprec(16):
            ok = abs(r.value) <= bound + r.error_bound + tol
        checks.append(
            Check(
                f"theorem1 x={x}",
                bool(ok),
                {"residual": render(r), "remainder_bound": _s(bound)},
            )
        )
    for x, want in (("0.1", -1), ("0.2", 1)):
        v = s_plus(x, ctx)
        checks.append(
            Check(
                f"s_plus sign x={x}",
                v.certified_sign() == want,
                {"value": render(v), "expected_sign": want},
            )
        )
    return checks


def lemma2(ctx: PrecisionContext) -> list[Check]:
    checks = []
    with ctx.workprec(32):
        for x in LEMMA2_GRID:
            xv = _exact_decimal(x)
            plus = mobius_plus_series(x, ctx)
            classic = mobius_lambert_classic(x, ctx)
            checks.append(
                Check(
                    f"lemma2 x={x}",
                    plus.contains(xv - 2 * xv * xv),
                    {"series": render(plus), "closed_form": _s(xv - 2 * xv * xv)},
                )
            )
            checks.append(
                Check(f"lambert x={x}", classic.contains(xv), {"series": render(classic), "closed_form": x})
            )
    values = limit_probe([x for x, _ in PROBE], ctx)
    for (x, want), v in zip(PROBE, values):
        checks.append(Check(f"limit probe x={x}", v.contains(want), {"series": render(v), "closed_form": want}))
    return checks


def corollary(ctx: PrecisionContext) -> list[Check]:
    # the 2^-180 claim is about 200 terms at >= 256 bits
    wide = ctx if ctx.precision_bits >= 256 else ctx.with_precision(256)
    full = corollary_half(wide)
    head = corollary_half(wide, terms=200)
    limit = mpf(2) ** -180
    return [
        Check("corollary encloses 0", full.contains(0), {"value": render(full), "precision_bits": wide.precision_bits}),
        Check(
            "corollary |partial sum to 200| <= 2^-180",
            bool(abs(head.value) + head.error_bound <= limit),
            {"value": render(head), "limit": _s(limit), "precision_bits": wide.precision_bits},
        ),
    ]


def dirichlet(ctx: PrecisionContext) -> list[Check]:
    checks = []
    for s, N, limit in ((2, 10**5, mpf("2e-5")), (3, 10**4, mpf(dirichlet_tail_bound(3, 10**4)))):
        r = dirichlet_quotient_check(s, N, ctx)
        ok = abs(r.value) + r.error_bound <= limit
        checks.append(
            Check(
                f"dirichlet s={s} N={N}",
                bool(ok),
                {"difference": render(r), "limit": _s(limit)},
            )
        )
    return checks


SUITES = {
    "step1": step1,
    "step2": step2,
    "theorem1": theorem1,
    "theta-fe": theta_fe,
    "lemma2": lemma2,
    "corollary": corollary,
    "dirichlet": dirichlet,
}


def run_suite(name: str, ctx: PrecisionContext | None = None) -> list[Check]:
    """Run one suite by name, or every suite for ``"all"``."""
    ctx = ctx or PrecisionContext()
    if name == "all":
        return [c for suite in SUITES.values() for c in suite(ctx)]
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'") from None
    return suite(ctx)
