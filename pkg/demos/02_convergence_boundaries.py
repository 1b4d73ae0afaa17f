"""
Where the sum lives
===================

The convergence region of S(eta, c; x) has a curved boundary: eta must
exceed sqrt(x) for positive x and sqrt(1+|x|)-1 for negative x, with the
boundary itself admitted only when c > 3/2.
"""

import math

from hypersum import SumParams, convergence_check, sum_direct

# A coarse map of the (x, eta) plane at two values of c. Boundary points
# are marked B, and only the large-c panel keeps them convergent.
for c in (1.0, 2.0):
    print("c = %.0f" % c)
    print("  eta\\x " + "".join("%6.2f" % x for x in [-0.9, -0.5, 0.0, 0.25, 0.49, 0.81]))
    for eta in (0.3, 0.5, 0.7, 0.9, 1.2):
        row = []
        for x in (-0.9, -0.5, 0.0, 0.25, 0.49, 0.81):
            v = convergence_check(SumParams(eta, c, x))
            row.append("B" if v.on_boundary else ("+" if v.convergent else "."))
        print("  %4.1f  " % eta + "".join("%6s" % s for s in row))
    print()

# The exact boundary for x = 0.49 is eta = 0.7. Nudge eta across it.
for eta in (0.7 - 1e-3, 0.7, 0.7 + 1e-3):
    v = convergence_check(SumParams(eta, 2.0, 0.49))
    print("eta = %.4f: convergent=%s on_boundary=%s (%s)"
          % (eta, v.convergent, v.on_boundary, v.reason.value))

# Divergence is not subtle. Partial sums at (0.5, 1, 0.5), a point just
# outside the region, grow geometrically; override_divergence lets the
# series run so the blowup is visible.
print()
print("partial sums at (eta, c, x) = (0.5, 1, 0.5):")
for k in (50, 150, 300, 500):
    s = sum_direct(SumParams(0.5, 1.0, 0.5), max_terms=k, override_divergence=True)
    print("  k <= %3d   %12.4e" % (k, s.value))

# On the boundary with c > 3/2 the terms decay like k^(1/2-c): summable,
# but slowly. The error estimate carries an integral tail bound.
r = sum_direct(SumParams(0.7, 2.0, 0.49), max_terms=50_000)
print()
print("boundary point (0.7, 2, 0.49): value %.10f  est %.1e  (exact 20/7 = %.10f)"
      % (r.value, r.abs_error_estimate, 20.0 / 7.0))
assert abs(r.value - 20.0 / 7.0) < 3 * r.abs_error_estimate
assert math.isfinite(r.value)
