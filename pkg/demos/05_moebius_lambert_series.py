"""
Moebius Lambert series and the value at one half
=================================================

sum mu(n) x^n/(1 - x^n) = x, and with x^n + 1 in the denominator the sum is
x - 2x^2, which vanishes at x = 1/2.
"""

from fractions import Fraction

from liouville import (
    PrecisionContext,
    corollary_half,
    limit_probe,
    mobius_lambert_classic,
    mobius_plus_series,
    partial_fraction_identity_exact,
)
from liouville.moebius import corollary_partial_exact

ctx = PrecisionContext(128)

# the partial fraction step, in exact rationals
for z in (2, Fraction(5, 2), Fraction(-7, 3)):
    print(f"1/(z+1) = 1/(z-1) - 2/(z^2-1) at z={z}: {partial_fraction_identity_exact(z)}")

# decimal strings are read exactly; their rounding is charged to the bound
for x in ("-0.5", "0.3", "0.9"):
    q = Fraction(x)
    print(f"x={x}: classic {mobius_lambert_classic(x, ctx)}")
    print(f"        plus  {mobius_plus_series(x, ctx)}   (x - 2x^2 = {float(q - 2 * q * q)})")

# as x climbs to 1 the plus series heads to -1
for x, v in zip(("0.9", "0.99", "0.999"), limit_probe(["0.9", "0.99", "0.999"], ctx)):
    print(f"x={x}: {v}")

print("partial sums at one half:", corollary_partial_exact(1), corollary_partial_exact(2))
print("full sum at one half (256 bits):", corollary_half())
print("first 200 terms:", corollary_half(PrecisionContext(256), terms=200))
