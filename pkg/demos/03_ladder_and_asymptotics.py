"""
The inner functions at large index
==================================

The building block G_k = 2F1((k+1)/2, (k+2)/2; c; x) is generated for all
k by a stride-2 contiguous recurrence in log space. A closed asymptotic
approximation takes over at large k; its error should shrink like a power
of k, which the table below makes visible.

For x < 0 the functions oscillate under a phase Phi(k), so pointwise
ratios near a zero crossing are noise. The comparison is kept away from
the crossings.
"""

import math

from hypersum import hyp2f1_ladder, hyp2f1_large_k

for c, x in [(2.0, 0.64), (2.0, -0.5)]:
    print("c = %g, x = %g" % (c, x))
    logs, signs = hyp2f1_ladder(c, x, 800)
    print("  %5s %24s %24s %10s" % ("k", "recurrence", "asymptotic", "rel err"))
    # growing case stops at 400: e^log passes float range soon after
    ks = (50, 100, 200, 400) if x > 0 else (50, 100, 200, 400, 800)
    for k in ks:
        exact = signs[k] * math.exp(logs[k])
        ae = hyp2f1_large_k(k, c, x)
        if x < 0 and abs(math.sin(ae.Phi_k)) < 0.2:
            # too close to a phase zero for a pointwise ratio
            continue
        rel = abs(ae.approx - exact) / abs(exact)
        print("  %5d %24.15e %24.15e %10.2e" % (k, exact, ae.approx, rel))
    print()

# The oscillation for x < 0 is genuine: signs flip with the phase.
logs, signs = hyp2f1_ladder(2.0, -0.8, 40)
pattern = "".join("+" if s > 0 else "-" for s in signs)
print("sign pattern of G_k at (c, x) = (2, -0.8), k = 0..40:")
print("  " + pattern)
