"""
The main term of s_plus and where it changes sign
=================================================

s_plus(x) is 1/2 - c/sqrt(x) with c = (sqrt 2 - 1)/2, up to a remainder
bounded by 3 exp(-pi/(2x))/sqrt(x). The main term vanishes at 3 - 2 sqrt 2,
but the remainder is not negligible there.
"""

import mpmath

from liouville import (
    PrecisionContext,
    find_sign_crossing,
    remainder_bound,
    s_plus,
    theorem1_remainder,
    theorem1_residual,
)

ctx = PrecisionContext(128)

for x in ("0.05", "0.1", "0.2", "0.5"):
    r = theorem1_residual(x, ctx)
    print(f"x={x}: s_plus - main term = {mpmath.nstr(r.value, 8)}, bound {remainder_bound(float(x)):.3e}")

print("sign of s_plus(0.1):", s_plus("0.1", ctx).certified_sign())
print("sign of s_plus(0.2):", s_plus("0.2", ctx).certified_sign())

a, b = find_sign_crossing("0.1", "0.3", ctx)
with mpmath.workprec(200):
    root = 3 - 2 * mpmath.sqrt(2)
    print("certified crossing in", [mpmath.nstr(a, 16), mpmath.nstr(b, 16)])
    print("root of the main term  ", mpmath.nstr(root, 16))
    print("offset                 ", mpmath.nstr(a - root, 4))
    print("remainder at crossing  ", mpmath.nstr(theorem1_remainder(a, ctx).value, 4))
