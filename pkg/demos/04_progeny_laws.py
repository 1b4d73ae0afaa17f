"""
Total progeny of a heavy-tailed branching process
=================================================

Offspring follow the scaled Sibuya law with pgf 1 - lam(1-u)^alpha.
Conditioned on extinction, the total progeny at alpha = 1/2 has
probabilities built from the hypergeometric ladder, and three other
routes to the same numbers exist: an elementary generating function,
formal series extraction, and a Bessel-transform integral.
"""

from hypersum import (
    GeneralProgenyLaw,
    ProgenyHalfLaw,
    ScaledSibuya,
    extinction_prob,
    general_progeny_pmf_range,
    h_alpha_pgf,
    progeny_pgf_elementary,
    progeny_pmf_bessel_oracle,
    progeny_pmf_range,
    progeny_pmf_series_coeffs,
)

law = ProgenyHalfLaw(0.6)
print("lam = 0.6: extinction probability Q = %.4f, radius z_minus = %.6f" % (law.Q, law.z_minus))
print()

# Three independent routes, first eight probabilities.
rec = progeny_pmf_range(law, 8)
ser = progeny_pmf_series_coeffs(law, 8)
print("%4s %22s %22s %22s" % ("ell", "recurrence", "series coeffs", "Bessel integral"))
for ell in range(1, 9):
    bes = progeny_pmf_bessel_oracle(law, ell)
    print("%4d %22.15e %22.15e %22.15e" % (ell, rec[ell - 1], ser[ell - 1], bes))
print()

# The same transform from the root-finding route for general alpha: at
# alpha = 1/2 it must land on the elementary surd.
d = ScaledSibuya(0.5, 0.6)
print("%6s %18s %18s" % ("z", "root route", "elementary"))
for z in (0.25, 0.5, 0.75, 1.0):
    print("%6.2f %18.12f %18.12f" % (z, h_alpha_pgf(d, z), progeny_pgf_elementary(law, z)))
print()

# A general-alpha flavor: the transform is a proper pgf (H(1) = 1) for
# any admissible (alpha, lam), not only the elementary case.
for alpha in (0.3, 0.7):
    d = ScaledSibuya(alpha, 0.6)
    print("alpha = %.1f: Q = %.6f  H(0.5) = %.10f  H(1) = %.1f"
          % (alpha, extinction_prob(d), h_alpha_pgf(d, 0.5), h_alpha_pgf(d, 1.0)))
print()

# The two-parameter family q_ell(c, x) generalizes the half law; its tail
# is a pure power ell^(1/2-c). Ratios of log-probabilities across a decade
# of ell recover the exponent.
import math

for c in (1.75, 2.5, 4.0):
    fam = GeneralProgenyLaw(c, 0.49)
    q = general_progeny_pmf_range(fam, 10_000)
    slope = (math.log(q[9999]) - math.log(q[999])) / (math.log(10_000) - math.log(1000))
    print("c = %4.2f: fitted tail exponent %8.4f   (1/2 - c = %5.2f)" % (c, slope, 0.5 - c))
