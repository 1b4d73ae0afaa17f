"""Heavy-tailed branching: scaled Sibuya offspring, the extinction dual,
and total-progeny laws whose probabilities are hypergeometric ladder values.

The alpha = 1/2 progeny law has three independent expressions (elementary
generating function, hypergeometric form, Bessel integral) that are kept
separate on purpose; agreement between them is evidence, identity would be
circular.
"""

import math
from dataclasses import dataclass, field

from scipy.integrate import quad

from .errors import DomainError, QuadratureFailure, RootFindFailure
from .special import (
    Method,
    _g_seed,
    bessel_i1_scaled,
    hyp2f1_half_one,
    hyp2f1_ladder,
)

__all__ = [
    "ScaledSibuya",
    "ProgenyHalfLaw",
    "GeneralProgenyLaw",
    "DualRoot",
    "sibuya_pmf",
    "sibuya_pgf",
    "extinction_prob",
    "dual_pgf",
    "dual_offspring_pmf",
    "progeny_pmf",
    "progeny_pmf_range",
    "progeny_pgf_elementary",
    "progeny_pgf_hypergeometric",
    "progeny_pmf_bessel_oracle",
    "progeny_pmf_series_coeffs",
    "general_progeny_pmf",
    "general_progeny_log_pmf",
    "general_progeny_pmf_range",
    "solve_dual_root",
    "h_alpha_pgf",
    "functional_equation_residual",
]


@dataclass(frozen=True)
class ScaledSibuya:
    """Offspring law with generating function 1 - lam*(1-u)^alpha.

    P(0) = 1-lam, and the tail decays like k^(-1-alpha): infinite mean for
    every alpha < 1.
    """

    alpha: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError("require 0 < alpha <= 1")
        if not 0.0 < self.lam <= 1.0:
            raise DomainError("require 0 < lam <= 1")


def sibuya_pmf(d, k):
    """P(offspring = k). Ratio recurrence, exact to rounding."""
    if k < 0 or k != int(k):
        raise DomainError("k must be a nonnegative integer")
    k = int(k)
    if k == 0:
        return 1.0 - d.lam
    p = d.lam * d.alpha
    for j in range(1, k):
        p *= (j - d.alpha) / (j + 1.0)
    return p


def sibuya_pgf(d, u):
    if not -1.0 <= u <= 1.0:
        raise DomainError("require -1 <= u <= 1")
    return 1.0 - d.lam * (1.0 - u) ** d.alpha


def extinction_prob(d):
    """Root of pgf(q) = q in [0, 1): q = 1 - lam^(1/(1-alpha)).

    alpha = 1 degenerates (the offspring mean becomes lam <= 1 and
    extinction is certain, the formula is 0/0); lam = 1 likewise drops the
    k = 0 atom. Both raise rather than return a conventional value.
    """
    if d.alpha == 1.0 or d.lam == 1.0:
        raise DomainError("extinction dual needs alpha < 1 and lam < 1")
    return 1.0 - d.lam ** (1.0 / (1.0 - d.alpha))


def dual_pgf(d, u):
    """Offspring pgf conditioned on eventual extinction: pgf(q*u)/q."""
    q = extinction_prob(d)
    return sibuya_pgf(d, q * u) / q


def dual_offspring_pmf(d, k):
    """Dual pmf: (1-lam)/q at zero, q^(k-1) * sibuya_pmf(k) above.

    Finite mean alpha, unlike the original law.
    """
    q = extinction_prob(d)
    if k == 0:
        return (1.0 - d.lam) / q
    return q ** (k - 1) * sibuya_pmf(d, k)


@dataclass(frozen=True)
class ProgenyHalfLaw:
    """Total progeny of the alpha = 1/2 process, conditioned on extinction.

    Q = 1 - lam^2 is the extinction probability; z_minus and z_plus bound
    the branch cut of the generating function H, and z_minus > 1 is its
    radius of convergence.
    """

    lam: float
    Q: float = field(init=False)
    z_minus: float = field(init=False)
    z_plus: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise DomainError("require 0 < lam < 1")
        object.__setattr__(self, "Q", 1.0 - self.lam * self.lam)
        rq = math.sqrt(self.Q)
        object.__setattr__(self, "z_minus", 2.0 / (1.0 + rq))
        object.__setattr__(self, "z_plus", 2.0 / (1.0 - rq))

    @classmethod
    def from_extinction_prob(cls, Q):
        if not 0.0 < Q < 1.0:
            raise DomainError("require 0 < Q < 1")
        return cls(lam=math.sqrt(1.0 - Q))


def _ladder_log(c, x, k):
    """(log|G_k|, sign) for G_k = 2F1((k+1)/2, (k+2)/2; c; x)."""
    if k <= 150:
        g = _g_seed(k, c, x)
        if g == 0.0:
            return -math.inf, 1.0
        return math.log(abs(g)), (1.0 if g > 0.0 else -1.0)
    logs, signs = hyp2f1_ladder(c, x, k)
    return logs[k], signs[k]


def progeny_pmf(law, ell):
    """P(total progeny = ell) = 2^-ell (1-Q)^(ell-1) G_(ell-1)(2; Q)."""
    if ell < 1 or ell != int(ell):
        raise DomainError("ell must be a positive integer")
    ell = int(ell)
    lg, sg = _ladder_log(2.0, law.Q, ell - 1)
    lp = -ell * math.log(2.0) + (ell - 1) * 2.0 * math.log(law.lam) + lg
    return sg * math.exp(lp)


def progeny_pmf_range(law, lmax):
    """P(total progeny = ell) for ell = 1..lmax, one ladder sweep."""
    if lmax < 1:
        raise DomainError("lmax must be >= 1")
    logs, signs = hyp2f1_ladder(2.0, law.Q, lmax - 1)
    llam2 = 2.0 * math.log(law.lam)
    out = []
    for ell in range(1, lmax + 1):
        lp = -ell * math.log(2.0) + (ell - 1) * llam2 + logs[ell - 1]
        out.append(signs[ell - 1] * math.exp(lp))
    return out


def progeny_pgf_elementary(law, z):
    """H(z) in surds: z/(1-lam^2) * (1 - lam^2 z/2 - (lam/2) sqrt(lam^2 z^2 - 4z + 4)).

    Real only off the branch cut (z_minus, z_plus).
    """
    rad = law.lam * law.lam * z * z - 4.0 * z + 4.0
    if rad < 0.0:
        # At z = z_minus the discriminant is an exact zero hit by rounding
        # noise; a genuinely interior z produces rad of order 1.
        if rad > -1e-12 * (4.0 + 4.0 * abs(z)):
            rad = 0.0
        else:
            raise DomainError("z in the branch cut (z_minus, z_plus)")
    lam = law.lam
    return z / (1.0 - lam * lam) * (
        1.0 - lam * lam * z / 2.0 - (lam / 2.0) * math.sqrt(rad))


def progeny_pgf_hypergeometric(law, z):
    """H(z) = (z/2)/(1 - lam^2 z/2) * 2F1(1/2, 1; 2; Q/(1 - lam^2 z/2)^2).

    The argument reaches 1 exactly at z = z_minus, where the c = 2 unit
    value 2F1(1/2, 1; 2; 1) = 2 makes H finite: H(z_minus) = z_minus/sqrt(Q).
    """
    if z > law.z_minus * (1.0 + 1e-12):
        raise DomainError("z past the convergence radius z_minus")
    w = law.lam * law.lam * z / 2.0
    denom = 1.0 - w
    arg = law.Q / (denom * denom)
    if arg > 1.0 + 1e-12:
        raise DomainError("argument exceeds 1 (z past z_minus)")
    if abs(arg - 1.0) <= 1e-12:
        # z at (or within rounding of) z_minus: the argument is an exact 1
        # and the square-root sensitivity of the series there would cost
        # half the digits; take the unit-argument value instead.
        arg = 1.0
    inner = hyp2f1_half_one(2.0, arg)
    return (z / 2.0) / denom * inner.value


def progeny_pmf_bessel_oracle(law, ell, rtol=1e-10):
    """P(total progeny = ell) as a Bessel-transform integral.

    p_ell = Q^{-1/2}/(ell-1)! * integral_0^inf u^(ell-2) e^(-gamma u)
    I_1(beta u) du with gamma = 2/lam^2, beta = gamma sqrt(Q). Shares no
    code with the recurrence route, so it can serve as an oracle for it.
    Uses the exponentially scaled I_1 to keep the integrand bounded; the
    (ell-1)! is folded into the exponent. Upper limit is set where the
    log-integrand falls 40 below its peak.
    """
    if ell < 1 or ell != int(ell):
        raise DomainError("ell must be a positive integer")
    ell = int(ell)
    gamma = 2.0 / (law.lam * law.lam)
    beta = gamma * math.sqrt(law.Q)
    decay = gamma - beta
    lgam = math.lgamma(ell)
    lpref = -0.5 * math.log(law.Q) - lgam

    def f(u):
        if u == 0.0:
            # u^(ell-2) I_1(beta u) -> beta/2 at ell = 1, 0 for ell >= 2.
            return beta / 2.0 * math.exp(lpref) if ell == 1 else 0.0
        lt = (ell - 2) * math.log(u) - decay * u + lpref
        return math.exp(lt) * bessel_i1_scaled(beta * u)

    peak = max((ell - 2) / decay, 1.0 / decay)
    # Walk out until the log-integrand is 40 under its peak value.
    lpk = (ell - 2) * math.log(peak) - decay * peak
    hi = peak
    while (ell - 2) * math.log(hi) - decay * hi > lpk - 40.0:
        hi *= 1.5
    val, err = quad(f, 0.0, hi, points=[peak] if peak < hi else None,
                    limit=400, epsabs=1e-14, epsrel=1e-12)
    if not math.isfinite(val) or err > max(rtol * abs(val), 1e-9):
        raise QuadratureFailure("integral error %.3g too large" % err)
    return val


def progeny_pmf_series_coeffs(law, lmax):
    """First lmax progeny probabilities by formal series extraction.

    Writes the surd as sqrt(1-u) with u = z - lam^2 z^2/4 and composes the
    binomial series. u is a polynomial, so truncating the outer series at
    order lmax is exact for coefficients up to z^lmax; no analysis is
    involved, only polynomial algebra, which makes this a third independent
    route.
    """
    if lmax < 1 or lmax > 60:
        raise DomainError("lmax must be in 1..60 (binomial weights overflow beyond)")
    n = lmax + 1
    lam2 = law.lam * law.lam
    # u = z - (lam^2/4) z^2 as coefficient list.
    u = [0.0] * (n + 1)
    u[1] = 1.0
    u[2] = -lam2 / 4.0
    # sqrt(1-u) = sum_j binom(1/2, j) (-u)^j, truncated at z^n.
    root = [0.0] * (n + 1)
    root[0] = 1.0
    upow = [0.0] * (n + 1)
    upow[0] = 1.0
    coef = 1.0
    for j in range(1, n + 1):
        nxt = [0.0] * (n + 1)
        for i in range(n + 1):
            if upow[i] == 0.0:
                continue
            for t in (1, 2):
                if i + t <= n:
                    nxt[i + t] += upow[i] * u[t]
        upow = nxt
        coef *= (0.5 - (j - 1)) / j
        for i in range(n + 1):
            root[i] += coef * (-1.0) ** j * upow[i]
    # H(z) = z/(1-lam^2) (1 - lam^2 z/2 - lam root(z)).
    inner = [0.0] * (n + 1)
    inner[0] = 1.0
    inner[1] = -lam2 / 2.0
    for i in range(n + 1):
        inner[i] -= law.lam * root[i]
    pref = 1.0 / (1.0 - lam2)
    return [pref * inner[ell - 1] for ell in range(1, lmax + 1)]


@dataclass(frozen=True)
class GeneralProgenyLaw:
    """Progeny-type law q_ell = ((c-3/2)/(c-1)) sqrt(x) (1-sqrt(x))^(ell-1)
    G_(ell-1)(c; x), normalized for every c > 3/2, 0 < x < 1."""

    c: float
    x: float

    def __post_init__(self):
        if not self.c > 1.5:
            raise DomainError("require c > 3/2")
        if not 0.0 < self.x < 1.0:
            raise DomainError("require 0 < x < 1")


def general_progeny_log_pmf(law, ell):
    if ell < 1 or ell != int(ell):
        raise DomainError("ell must be a positive integer")
    ell = int(ell)
    lg, sg = _ladder_log(law.c, law.x, ell - 1)
    if sg < 0.0:
        raise DomainError("negative mass at ell = %d (invalid parameters)" % ell)
    rx = math.sqrt(law.x)
    return (math.log((law.c - 1.5) / (law.c - 1.0)) + 0.5 * math.log(law.x)
            + (ell - 1) * math.log1p(-rx) + lg)


def general_progeny_pmf(law, ell):
    return math.exp(general_progeny_log_pmf(law, ell))


def general_progeny_pmf_range(law, lmax):
    """q_ell for ell = 1..lmax from a single ladder sweep."""
    if lmax < 1:
        raise DomainError("lmax must be >= 1")
    logs, signs = hyp2f1_ladder(law.c, law.x, lmax - 1)
    rx = math.sqrt(law.x)
    lpref = math.log((law.c - 1.5) / (law.c - 1.0)) + 0.5 * math.log(law.x)
    l1mrx = math.log1p(-rx)
    out = []
    for ell in range(1, lmax + 1):
        lp = lpref + (ell - 1) * l1mrx + logs[ell - 1]
        out.append(signs[ell - 1] * math.exp(lp))
    return out


@dataclass(frozen=True)
class DualRoot:
    """Root t_s0 of t^(alpha/(1-alpha)) (t-1) = v on (1, 1+v]."""

    v: float
    alpha: float
    t_s0: float

    def __post_init__(self):
        t = self.t_s0
        resid = abs(t ** (self.alpha / (1.0 - self.alpha)) * (t - 1.0) - self.v)
        if resid > 1e-12 * max(1.0, self.v):
            raise RootFindFailure("root residual %.3g" % resid)


def solve_dual_root(v, alpha):
    """Solve t^(alpha/(1-alpha)) (t-1) = v for the unique root above 1.

    Newton on the log form g(t) = (alpha/(1-alpha)) log t + log(t-1) - log v,
    which is strictly increasing, with bisection whenever a step leaves the
    bracket. g(1+) = -inf and g(1+v) >= 0 pin the root in (1, 1+v].
    """
    if not v > 0.0:
        raise DomainError("require v > 0")
    if not 0.0 < alpha < 1.0:
        raise DomainError("require 0 < alpha < 1")
    r = alpha / (1.0 - alpha)
    lv = math.log(v)

    def g(t):
        return r * math.log(t) + math.log(t - 1.0) - lv

    lo = 1.0 + 1e-300
    hi = 1.0 + v
    t = 1.0 + v / (1.0 + v) ** (r / (r + 1.0)) if v < 1.0 else (1.0 + v) ** (1.0 / (r + 1.0))
    t = min(max(t, 1.0 + 1e-16), hi)
    for _ in range(200):
        gt = g(t)
        if abs(gt) < 1e-14:
            return DualRoot(v=v, alpha=alpha, t_s0=t)
        if gt > 0.0:
            hi = t
        else:
            lo = t
        step = gt / (r / t + 1.0 / (t - 1.0))
        tn = t - step
        if not lo < tn < hi:
            tn = 0.5 * (lo + hi)
        if tn == t:
            return DualRoot(v=v, alpha=alpha, t_s0=t)
        t = tn
    raise RootFindFailure("no convergence after 200 iterations (v=%g, alpha=%g)" % (v, alpha))


def h_alpha_pgf(d, z):
    """Progeny generating function for general alpha via the dual root:

    H(z) = (1 - (lam z t)^(1/(1-alpha))) / (1 - lam^(1/(1-alpha))),
    t = solve_dual_root((1-z)/(lam z)^(1/(1-alpha)), alpha).

    Reduces to the elementary alpha = 1/2 form; checked against it rather
    than derived from it.
    """
    if d.alpha >= 1.0 or d.lam >= 1.0:
        raise DomainError("need alpha < 1 and lam < 1")
    if z < 0.0 or z > 1.0:
        raise DomainError("require 0 <= z <= 1")
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return 1.0
    s = 1.0 / (1.0 - d.alpha)
    v = (1.0 - z) / (d.lam * z) ** s
    t = solve_dual_root(v, d.alpha).t_s0
    return (1.0 - (d.lam * z * t) ** s) / (1.0 - d.lam ** s)


def functional_equation_residual(d, z):
    """|y - z * pgf(y)| with y = Q * H(z): zero when H is the conditioned
    progeny transform of the original offspring law."""
    y = extinction_prob(d) * h_alpha_pgf(d, z)
    return abs(y - z * sibuya_pgf(d, y))
