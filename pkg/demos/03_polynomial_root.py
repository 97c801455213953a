# Dominant root of a degree-21 polynomial over real Puiseux series via its
# companion matrix: the benchmark experiment with the step-by-step error
# table.
#
# Run:  python3 demos/03_polynomial_root.py

import time
from fractions import Fraction

from lcpower import (Polynomial, SolverConfig, constant, from_terms,
                     poly_dominant_root, serialize_series, truncated, zero)

# The polynomial is built from its linear factors.  Largest root:
#   100 + t + 2t^2 + 3t^3 + ... + 9t^9
# and the remaining twenty roots are 2n + (n/20) t for n = 1..20.
largest = from_terms([(0, 100)] + [(k, k) for k in range(1, 10)])
roots = [largest] + [from_terms([(0, 2 * n), (1, n / 20)]) for n in range(1, 21)]

coeffs = [constant(1.0)]
for r in roots:
    nxt = [zero()] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        nxt[i + 1] = nxt[i + 1] + c
        nxt[i] = nxt[i] - c * r
    coeffs = nxt
poly = Polynomial(tuple(truncated(c, 9) for c in coeffs[:-1]))

print("degree:", poly.degree)
print("a0 =", serialize_series(poly.coeffs[0])[:60], "...")

# tol sits below the double-precision plateau on purpose, so the run uses
# all 100 steps and the table below covers the whole range; 1e-12 would
# stop it around step 45 (converged would then be True).
cfg = SolverConfig(truncation=Fraction(9), max_iters=100, tol=1e-14,
                   norm_kind="l2", start="ones")
started = time.time()
result, trace = poly_dominant_root(poly, cfg)
elapsed = time.time() - started

print()
print(f"solved in {elapsed:.1f}s, {result.iterations_used} iterations, "
      f"converged={result.converged}")
print("dominant root :", serialize_series(result.eigenvalue)[:100], "...")
print("true root     :", serialize_series(largest))
print("poly residual :", result.poly_residual)

# Error of each coefficient against the known root, sampled every 10 steps;
# lower-order coefficients settle first, the window edge settles last.
cols, rows = trace.error_table(reference=largest)
print()
print("step  " + "  ".join(f"t^{q}".ljust(11) for q in cols[:5]))
for step, errs in rows:
    if step % 10 == 0 or step == rows[-1][0]:
        print(f"{step:4d}  " + "  ".join(f"{e:.5e}" for e in errs[:5]))
