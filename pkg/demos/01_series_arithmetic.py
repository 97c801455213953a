# Working with truncated Levi-Civita numbers: construction, arithmetic,
# inversion, square roots, and the non-Archimedean order.
#
# Run:  python3 demos/01_series_arithmetic.py

from fractions import Fraction

from lcpower import (compare, constant, eq_up_to, invert, magnitude, monomial,
                     parse_series, semi_norm, serialize_series, sqrt, t,
                     truncated, valuation)

show = serialize_series

# Numbers can come from the text grammar or be assembled from t directly.
a = parse_series("100 + 1*t^1 + 2*t^2")
b = 1 + t                      # scalars promote automatically
half_power = monomial(Fraction(1, 2), 1.5)

print("a                =", show(a))
print("b                =", show(b))
print("t^(1/2) term     =", show(half_power))
print("a * b            =", show(a * b))
print("valuation of a   =", valuation(a))
print("valuation of t^3 =", valuation(monomial(3)))

# Inversion and square roots work on a finite exponent window.  The window
# is tracked through every operation; here we ask for exponents up to 6.
print()
print("1 / (1+t) to t^6     =", show(invert(b, bound=6)))
print("sqrt(1+t) to t^6     =", show(sqrt(b, bound=6)))
check = truncated(b, 6) * invert(b, bound=6)
print("(1+t) * inverse      =", show(check))
print("agrees with 1 to t^6 :", eq_up_to(check, constant(1), 6, 1e-12))

# t is an infinitesimal: positive, yet below every positive real number.
print()
print("t > 0        :", compare(t, constant(0)) > 0)
print("t < 1e-100   :", compare(t, constant(1e-100)) < 0)
print("|3+4i|       =", show(magnitude(constant(3 + 4j))))

# Semi-norms measure coefficients up to a chosen exponent; they are the
# gauge in which the solver's iterates converge.
c = parse_series("1 - t + t^2 - t^3")
print()
print("semi-norm of", show(c), "at window 3 :", semi_norm(c, 3))
