"""
Theta sums and the two lambda-weighted series
=============================================

Every value carries an error bound covering truncation and rounding.
"""

from liouville import (
    PrecisionContext,
    phi,
    s_minus,
    s_plus,
    step1_residual,
    step2_residual,
    theta,
    theta_functional_residual,
)

ctx = PrecisionContext(128)

print("phi(1)   =", phi(1, ctx))
print("theta(1) =", theta(1, ctx))
print("theta(4) =", theta(4, ctx))

# theta(x) = theta(1/x) / sqrt(x): the residual encloses zero
for x in ("0.1", "0.3", "3", "10"):
    r = theta_functional_residual(x, ctx)
    print(f"theta functional equation at x={x}: {r}  contains 0: {r.contains(0)}")

# the lambda series with -1 reproduces phi, the one with +1 gives phi(x) - 2 phi(2x)
for x in ("0.1", "0.5", "2"):
    print(f"x={x}: s_minus = {s_minus(x, ctx)}")
    print(f"       s_minus - phi             encloses 0: {step1_residual(x, ctx).contains(0)}")
    print(f"       s_plus = {s_plus(x, ctx)}")
    print(f"       s_plus - phi + 2 phi(2x)  encloses 0: {step2_residual(x, ctx).contains(0)}")
