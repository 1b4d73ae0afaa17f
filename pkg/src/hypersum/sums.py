"""The weighted hypergeometric sum S(eta, c; x), its convergence domain,
closed forms, special cases, and the geometric-weight variant sum.

S(eta, c; x) = sum_{k>=0} ((1-x)/(1+eta))^k * 2F1(k/2+1/2, k/2+1; c; x).

Direct summation streams the inner functions from the stride-2 recurrence
ladder in log space; the closed form routes through 2F1(1/2, 1; c; xi) with
xi = x/X^2, X = (x+eta)/(1+eta). The two paths share no evaluation code, so
they can check each other.
"""

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, NotConvergent, SlowConvergence
from .special import (
    DEFAULT_TOL,
    EvalResult,
    Method,
    _step_coeffs,
    _g_seed,
    _LOG_RESCALE,
    _LN2,
    default_max_terms,
    gauss_point,
    hyp2f1_half_one,
    log_abs_gamma,
)

__all__ = [
    "SumParams",
    "ClosedFormArgument",
    "Reason",
    "ConvergenceVerdict",
    "convergence_check",
    "sum_direct",
    "sum_closed",
    "sum_special",
    "evaluate",
    "letac_sum",
    "normalization_identity",
]

# Relative tolerance for classifying eta as sitting exactly on a Theorem-type
# convergence boundary; exact float equality would be meaningless.
_BOUNDARY_RTOL = 1e-12


@dataclass(frozen=True)
class SumParams:
    """The triple (eta, c, x) parameterizing S(eta, c; x)."""

    eta: float
    c: float
    x: float

    def __post_init__(self):
        if not self.eta > 0:
            raise DomainError("require eta > 0")
        if not self.c > 0:
            raise DomainError("require c > 0")
        if not -1.0 <= self.x <= 1.0:
            raise DomainError("require -1 <= x <= 1")


@dataclass(frozen=True)
class ClosedFormArgument:
    """Derived quantities of the closed form: X, xi, and the continuation
    threshold xi_star (absent for eta = 1, where it is infinite)."""

    X: float
    xi: float
    xi_star: float | None

    @classmethod
    def from_params(cls, p):
        X = (p.x + p.eta) / (1.0 + p.eta)
        xi = p.x / (X * X) if X != 0.0 else math.copysign(math.inf, p.x)
        if p.eta == 1.0:
            star = None
        else:
            star = (p.eta + 1.0) ** 2 / (p.eta - 1.0) ** 2
        return cls(X=X, xi=xi, xi_star=star)


class Reason(enum.Enum):
    Interior = "Interior"
    BoundaryNeedsLargeC = "BoundaryNeedsLargeC"
    DivergentPositiveX = "DivergentPositiveX"
    DivergentNegativeX = "DivergentNegativeX"
    DivergentAtOne = "DivergentAtOne"


@dataclass(frozen=True)
class ConvergenceVerdict:
    convergent: bool
    on_boundary: bool
    reason: Reason


def convergence_check(p):
    """Classify S(eta, c; x) convergence.

    For 0 < x < 1 the series converges iff eta > sqrt(x) (strict for
    c <= 3/2, non-strict above); for x < 0 the bound is sqrt(1+|x|) - 1;
    x = 0 always converges; at x = 1 only c > 3/2 survives (every k >= 1
    term carries a vanishing weight). Total function, raises nothing.
    """
    if p.x == 0.0:
        return ConvergenceVerdict(True, False, Reason.Interior)
    if p.x == 1.0:
        on_b = abs(p.eta - 1.0) <= _BOUNDARY_RTOL
        conv = p.c > 1.5
        if on_b:
            return ConvergenceVerdict(conv, True, Reason.BoundaryNeedsLargeC)
        return ConvergenceVerdict(conv, False, Reason.Interior if conv else Reason.DivergentAtOne)
    if p.x > 0.0:
        bound = math.sqrt(p.x)
        divergent_reason = Reason.DivergentPositiveX
    else:
        bound = math.sqrt(1.0 + abs(p.x)) - 1.0
        divergent_reason = Reason.DivergentNegativeX
    if abs(p.eta - bound) <= _BOUNDARY_RTOL * max(bound, 1.0):
        return ConvergenceVerdict(p.c > 1.5, True, Reason.BoundaryNeedsLargeC)
    if p.eta > bound:
        return ConvergenceVerdict(True, False, Reason.Interior)
    return ConvergenceVerdict(False, False, divergent_reason)


def _term_decay_ratio(p):
    """Asymptotic bound on the term ratio of the direct sum."""
    if p.x > 0.0:
        return (1.0 + math.sqrt(p.x)) / (1.0 + p.eta)
    if p.x < 0.0:
        return math.sqrt(1.0 + abs(p.x)) / (1.0 + p.eta)
    return 1.0 / (1.0 + p.eta)


def sum_direct(p, tol=DEFAULT_TOL, max_terms=None, override_divergence=False):
    """S(eta, c; x) by term-wise summation.

    The inner hypergeometric values come from the stride-2 recurrence ladder
    (exact contiguous relation, log-scaled), so large k costs neither
    overflow nor the accuracy of a truncated asymptotic. Terms are added
    until the absolute term stays below ``tol`` for three consecutive k.

    On a Theorem-type convergence boundary the terms decay only like
    k^(1/2-c); the sum then runs to ``max_terms`` and an integral-comparison
    tail bound is folded into ``abs_error_estimate`` instead of raising.

    ``override_divergence`` admits divergent parameters and returns the raw
    partial sum (for divergence demonstrations); its error estimate is the
    last term magnitude, a local figure only. Not available at x = 1, where
    individual terms are not finite.
    """
    verdict = convergence_check(p)
    if not verdict.convergent and not override_divergence:
        raise NotConvergent("S(%g, %g; %g) diverges: %s" % (p.eta, p.c, p.x, verdict.reason.value))
    if max_terms is None:
        max_terms = default_max_terms()
    if p.x == 1.0:
        if p.c <= 1.5:
            raise NotConvergent("S(eta, c; 1) has no finite terms for c <= 3/2")
        # Only the k=0 term carries weight (1-x)^k != 0.
        v = gauss_point(0.5, 1.0, p.c)
        return EvalResult(value=v, abs_error_estimate=4.0 * abs(v) * 2.2e-16,
                          terms_used=1, method=Method.GaussPoint)
    lw = math.log1p(-p.x) - math.log1p(p.eta)
    s = 0.0
    sum_abs = 0.0
    small = 0
    t = 0.0
    stopped = False
    k_stop = 0
    # Stream the ladder instead of materializing it: same recurrence as
    # special.hyp2f1_ladder, fused with the weight accumulation.
    m = max(4, math.ceil(p.c + 1.5) + 1)
    seeds = [_g_seed(k, p.c, p.x) for k in range(min(m + 1, max_terms) + 1)]
    D = p.x - 1.0
    state = {}
    if len(seeds) >= m + 2:
        for par in (0, 1):
            idx = [k for k in range(m + 2) if k % 2 == par]
            state[par] = [idx[-1], seeds[idx[-1]], seeds[idx[-2]], 0.0]
    for k in range(max_terms + 1):
        if k < len(seeds):
            g = seeds[k]
            lg = math.log(abs(g)) if g != 0.0 else -math.inf
            sg = 1.0 if g >= 0.0 else -1.0
        else:
            par = k % 2
            j, f0, fm, off = state[par]
            a = (j + 1) / 2.0
            A, B = _step_coeffs(a, a + 0.5, p.c, p.x, D)
            fp = A * f0 + B * fm
            mag = abs(fp)
            if mag > _LOG_RESCALE or 0.0 < mag < 1.0 / _LOG_RESCALE:
                e = math.frexp(mag)[1]
                sc = math.ldexp(1.0, -e)
                fp *= sc
                f0 *= sc
                off += e * _LN2
            state[par] = [k, fp, f0, off]
            lg = (math.log(abs(fp)) + off) if fp != 0.0 else -math.inf
            sg = 1.0 if fp >= 0.0 else -1.0
        lt = k * lw + lg
        if lt > 709.0:
            t = sg * math.inf
        else:
            t = sg * math.exp(lt) if lt > -745.0 else 0.0
        s += t
        sum_abs += abs(t)
        if abs(t) < tol:
            small += 1
            if small >= 3 and k > 2:
                stopped = True
                k_stop = k
                break
        else:
            small = 0
    if not stopped:
        last = abs(t)
        if verdict.on_boundary and verdict.convergent:
            # Terms ~ C k^{1/2-c} on the boundary; integral comparison gives
            # sum_{j>K} ~ C K^{3/2-c}/(c-3/2) = t_K * K/(c-3/2).
            tail = last * max_terms / (p.c - 1.5)
            est = tail + 2.2e-16 * sum_abs
            return EvalResult(value=s, abs_error_estimate=est,
                              terms_used=max_terms + 1, method=Method.Series)
        if override_divergence:
            return EvalResult(value=s, abs_error_estimate=last if math.isfinite(s) else math.inf,
                              terms_used=max_terms + 1, method=Method.Series)
        raise SlowConvergence(
            "direct sum did not settle in %d terms (term ratio ~ %.6f)"
            % (max_terms, _term_decay_ratio(p)))
    rho = min(_term_decay_ratio(p), 0.999999)
    est = abs(t) * rho / (1.0 - rho) + 2.2e-16 * sum_abs
    return EvalResult(value=s, abs_error_estimate=est,
                      terms_used=k_stop + 1, method=Method.Series)


def _special_value(c, eta, x):
    """Elementary S for c in {1,2,3}, conjugate-root form.

    R = sqrt((1-x)(eta^2-x)) stays real and positive on the whole
    x <= eta^2 range, including x < -eta, where this expression is the
    analytic continuation with the correct square-root branch. Regular at
    x = 0 and at R = 0 (the eta = sqrt(x) boundary) by construction.
    """
    R = math.sqrt((1.0 - x) * (eta * eta - x))
    if c == 1.0:
        return (1.0 + eta) / R
    if c == 2.0:
        return 2.0 * (1.0 + eta) / (eta + x + R)
    return (4.0 / 3.0) * (1.0 + eta) * (eta + x + 2.0 * R) / (eta + x + R) ** 2


def sum_closed(p):
    """S(eta, c; x) through the one-function closed form.

    Builds X = (x+eta)/(1+eta) and xi = x/X^2 and evaluates
    2F1(1/2, 1; c; xi)/X. Three special regimes:

    * x = -eta (X = 0): the finite limit Gamma(c)/Gamma(c-1/2) sqrt(pi/eta).
    * x < -eta (X < 0, only reachable for eta < 1): the naive 1/X route
      picks the wrong square-root branch, so the elementary c in {1,2,3}
      continuations are returned with ``continuation=True``; other c raise.
    * xi = 1 (x = 1 or x = eta^2): the unit-argument Gauss value, c > 3/2
      only.
    """
    eta, c, x = p.eta, p.c, p.x
    X = (x + eta) / (1.0 + eta)
    if x == -eta or abs(x + eta) <= 4e-16 * (abs(x) + eta):
        if c <= 0.5:
            raise DomainError("x = -eta limit needs c > 1/2")
        v = math.exp(log_abs_gamma(c) - log_abs_gamma(c - 0.5)) * math.sqrt(math.pi / eta)
        return EvalResult(value=v, abs_error_estimate=8.0 * v * 2.2e-16,
                          terms_used=0, method=Method.ClosedForm)
    if X < 0.0:
        if c in (1.0, 2.0, 3.0):
            v = _special_value(c, eta, x)
            return EvalResult(value=v, abs_error_estimate=8.0 * abs(v) * 2.2e-16,
                              terms_used=0, method=Method.ClosedForm, continuation=True)
        raise DomainError(
            "x < -eta continuation is only available in elementary form (c in {1,2,3})")
    xi = x / (X * X)
    # x = eta^2 puts xi at 1 exactly in real arithmetic, but the float
    # quotient lands a couple ulp to either side; treat that as 1.
    if abs(xi - 1.0) <= 4e-16:
        xi = 1.0
    if xi > 1.0:
        raise DomainError("closed form needs xi = x/X^2 <= 1, got %g" % xi)
    if xi == 1.0 and c <= 1.5:
        raise DomainError("xi = 1 requires c > 3/2")
    inner = hyp2f1_half_one(c, xi)
    v = inner.value / X
    est = inner.abs_error_estimate / X + 4.0 * abs(v) * 2.2e-16
    return EvalResult(value=v, abs_error_estimate=est,
                      terms_used=inner.terms_used, method=inner.method)


def sum_special(p):
    """Elementary closed forms of S for c in {1, 2, 3}.

    Domain is the convergence region for the given c: strict interior for
    c = 1, boundary included for c = 2, 3. The removable x = 0 singularity
    of the textbook expressions does not arise in the conjugate-root form.
    """
    if p.c not in (1.0, 2.0, 3.0):
        raise DomainError("special forms exist for c in {1, 2, 3}")
    verdict = convergence_check(p)
    if not verdict.convergent:
        raise DomainError("outside the convergence region: %s" % verdict.reason.value)
    if p.c == 1.0 and verdict.on_boundary:
        raise DomainError("c = 1 requires the strict interior")
    return EvalResult(value=_special_value(p.c, p.eta, p.x),
                      abs_error_estimate=8.0 * abs(_special_value(p.c, p.eta, p.x)) * 2.2e-16,
                      terms_used=0, method=Method.ClosedForm)


def evaluate(p, method="auto"):
    """S(eta, c; x) by the requested route.

    ``auto`` prefers the closed form and falls back to direct summation when
    xi is within 1e-6 of 1 with c <= 3/2 + 1e-6 (the closed form's argument
    degenerates there) or when the closed form rejects parameters the series
    still accepts.
    """
    method = method.lower()
    if method == "direct":
        return sum_direct(p)
    if method == "closed":
        return sum_closed(p)
    if method == "special":
        return sum_special(p)
    if method != "auto":
        raise ValueError("unknown method %r" % method)
    arg = ClosedFormArgument.from_params(p)
    if abs(arg.xi - 1.0) <= 1e-6 and p.c <= 1.5 + 1e-6:
        return sum_direct(p)
    try:
        return sum_closed(p)
    except DomainError:
        return sum_direct(p)


def letac_sum(z, c, x, method="closed", tol=DEFAULT_TOL, max_terms=None):
    """The geometric-weight variant sum_{k>=1} z^k 2F1(k/2, k/2+1/2; c; x).

    Defined for 0 < z < 1 and 0 < x < (1-z)^2; equals
    (z/(1-z)) 2F1(1/2, 1; c; x/(1-z)^2). The inner function at index k is
    the ladder value at k-1 (parameter shift by one half step).
    """
    if not 0.0 < z < 1.0:
        raise DomainError("require 0 < z < 1")
    if not 0.0 < x < (1.0 - z) ** 2:
        raise DomainError("require 0 < x < (1-z)^2")
    if not c > 0:
        raise DomainError("require c > 0")
    method = method.lower()
    if method == "closed":
        inner = hyp2f1_half_one(c, x / (1.0 - z) ** 2)
        pref = z / (1.0 - z)
        return EvalResult(value=pref * inner.value,
                          abs_error_estimate=pref * inner.abs_error_estimate,
                          terms_used=inner.terms_used, method=inner.method)
    if method != "direct":
        raise ValueError("method must be 'direct' or 'closed'")
    if max_terms is None:
        max_terms = default_max_terms()
    lz = math.log(z)
    s = 0.0
    small = 0
    m = max(4, math.ceil(c + 1.5) + 1)
    seeds = [_g_seed(j, c, x) for j in range(m + 2)]
    D = x - 1.0
    state = {}
    for par in (0, 1):
        idx = [j for j in range(m + 2) if j % 2 == par]
        state[par] = [idx[-1], seeds[idx[-1]], seeds[idx[-2]], 0.0]
    t = 0.0
    for k in range(1, max_terms + 1):
        j = k - 1
        if j < len(seeds):
            g = seeds[j]
            lg = math.log(abs(g)) if g != 0.0 else -math.inf
            sg = 1.0 if g >= 0.0 else -1.0
        else:
            par = j % 2
            i, f0, fm, off = state[par]
            a = (i + 1) / 2.0
            A, B = _step_coeffs(a, a + 0.5, c, x, D)
            fp = A * f0 + B * fm
            mag = abs(fp)
            if mag > _LOG_RESCALE or 0.0 < mag < 1.0 / _LOG_RESCALE:
                e = math.frexp(mag)[1]
                sc = math.ldexp(1.0, -e)
                fp *= sc
                f0 *= sc
                off += e * _LN2
            state[par] = [j, fp, f0, off]
            lg = (math.log(abs(fp)) + off) if fp != 0.0 else -math.inf
            sg = 1.0 if fp >= 0.0 else -1.0
        lt = k * lz + lg
        t = sg * math.exp(lt) if lt > -745.0 else 0.0
        s += t
        if abs(t) < tol:
            small += 1
            if small >= 3 and k > 3:
                rho = min(z / (1.0 - math.sqrt(x)), 0.999999)
                return EvalResult(value=s, abs_error_estimate=abs(t) * rho / (1.0 - rho),
                                  terms_used=k, method=Method.Series)
        else:
            small = 0
    raise SlowConvergence("variant sum did not settle in %d terms" % max_terms)


def normalization_identity(x):
    """(1/2) S(1, 2; x), identically 1 on [-1, 1]; evaluated by direct
    summation so the identity is a real check, not an echo of itself."""
    return 0.5 * sum_direct(SumParams(1.0, 2.0, x)).value
