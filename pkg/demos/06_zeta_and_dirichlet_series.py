"""
Real zeta values and the lambda Dirichlet series
================================================

sum lambda(n) n^-s = zeta(2s)/zeta(s); at s = 2 that is pi^2/15.
"""

import mpmath

from liouville import PrecisionContext, dirichlet_quotient_check, zeta_real
from liouville.means import dirichlet_partial_sum, dirichlet_tail_bound

ctx = PrecisionContext(128)

for s in (2, 4, "2.5", 30):
    print(f"zeta({s}) = {zeta_real(s, ctx)}")

quotient = zeta_real(4, ctx) / zeta_real(2, ctx)
with mpmath.workprec(150):
    print("zeta(4)/zeta(2) =", quotient, " pi^2/15 =", mpmath.nstr(mpmath.pi**2 / 15, 30))

for s, N in ((2, 10**3), (2, 10**5), (3, 10**4)):
    partial = dirichlet_partial_sum(s, N, ctx)
    diff = dirichlet_quotient_check(s, N, ctx)
    print(
        f"s={s}, N={N}: partial sum {mpmath.nstr(partial.value, 12)}, "
        f"difference {mpmath.nstr(diff.value, 4)}, tail bound {dirichlet_tail_bound(s, N):.1e}"
    )
