"""The weighted sum S(eta, c; x): domain logic, both evaluation routes,
elementary forms, and the geometric-weight variant.

Frozen constants come from mpmath at 40 digits, computed once through the
closed form and once by term-wise summation; the two agreed to all printed
digits before freezing.
"""

import math

import pytest

from hypersum.errors import DomainError, NotConvergent, SlowConvergence
from hypersum.special import Method
from hypersum.sums import (
    ClosedFormArgument,
    Reason,
    SumParams,
    convergence_check,
    evaluate,
    letac_sum,
    normalization_identity,
    sum_closed,
    sum_direct,
    sum_special,
)

from conftest import mp_hyp2f1


class TestSumParams:
    def test_rejects_bad_eta(self):
        with pytest.raises(DomainError):
            SumParams(0.0, 2.0, 0.5)
        with pytest.raises(DomainError):
            SumParams(-1.0, 2.0, 0.5)

    def test_rejects_bad_c(self):
        with pytest.raises(DomainError):
            SumParams(1.0, 0.0, 0.5)

    def test_rejects_x_outside_closed_interval(self):
        with pytest.raises(DomainError):
            SumParams(1.0, 2.0, 1.0000001)
        with pytest.raises(DomainError):
            SumParams(1.0, 2.0, -1.1)
        SumParams(1.0, 2.0, 1.0)
        SumParams(1.0, 2.0, -1.0)


class TestConvergenceCheck:
    def test_x_zero_always_converges(self):
        for eta in (0.01, 1.0, 40.0):
            v = convergence_check(SumParams(eta, 0.3, 0.0))
            assert v.convergent and not v.on_boundary

    def test_positive_x_threshold(self):
        assert convergence_check(SumParams(0.6, 1.0, 0.25)).convergent
        v = convergence_check(SumParams(0.4, 3.0, 0.25))
        assert not v.convergent
        assert v.reason is Reason.DivergentPositiveX

    def test_positive_boundary_needs_large_c(self):
        # eta = sqrt(x) exactly: c must exceed 3/2, equality not enough.
        lo = convergence_check(SumParams(0.5, 1.5, 0.25))
        hi = convergence_check(SumParams(0.5, 1.6, 0.25))
        assert lo.on_boundary and hi.on_boundary
        assert not lo.convergent
        assert hi.convergent
        assert lo.reason is Reason.BoundaryNeedsLargeC

    def test_boundary_classification_tolerance(self):
        near = convergence_check(SumParams(0.7 * (1 + 1e-13), 2.0, 0.49))
        off = convergence_check(SumParams(0.7 * (1 + 1e-9), 2.0, 0.49))
        assert near.on_boundary
        assert not off.on_boundary
        assert off.convergent and off.reason is Reason.Interior

    def test_negative_x_threshold(self):
        bound = math.sqrt(1.9) - 1.0
        assert convergence_check(SumParams(0.4, 2.0, -0.9)).convergent
        v = convergence_check(SumParams(0.3, 2.0, -0.9))
        assert not v.convergent and v.reason is Reason.DivergentNegativeX
        assert convergence_check(SumParams(bound, 2.0, -0.9)).on_boundary

    def test_x_one(self):
        # Weight kills every k >= 1 term, so only c matters; eta = 1 is
        # flagged as the boundary but the verdict is the same.
        assert convergence_check(SumParams(2.0, 2.0, 1.0)).convergent
        assert convergence_check(SumParams(1.0, 2.0, 1.0)).on_boundary
        v = convergence_check(SumParams(2.0, 0.7, 1.0))
        assert not v.convergent and v.reason is Reason.DivergentAtOne


class TestClosedFormArgument:
    def test_eta_one_has_no_finite_threshold(self):
        arg = ClosedFormArgument.from_params(SumParams(1.0, 2.0, 0.3))
        assert arg.xi_star is None
        assert arg.X == pytest.approx(0.65, rel=1e-15)

    def test_threshold_value(self):
        arg = ClosedFormArgument.from_params(SumParams(3.0, 2.0, 0.3))
        assert arg.xi_star == pytest.approx(4.0, rel=1e-15)

    def test_sign_of_X_tracks_x_plus_eta(self):
        arg = ClosedFormArgument.from_params(SumParams(0.3, 2.0, -0.5))
        assert arg.X < 0.0
        assert arg.xi < 0.0
        arg = ClosedFormArgument.from_params(SumParams(0.3, 2.0, -0.3))
        assert arg.X == 0.0
        assert math.isinf(arg.xi)


class TestSumDirect:
    def test_reference_values(self):
        # S(2, 2.5; 0.5) and S(0.7, 1.3; -0.5) at 40 digits
        r = sum_direct(SumParams(2.0, 2.5, 0.5))
        assert r.value == pytest.approx(1.4680827863644511378, rel=1e-12)
        assert r.method is Method.Series
        r = sum_direct(SumParams(0.7, 1.3, -0.5))
        assert r.value == pytest.approx(1.7823765756168735959, rel=1e-12)

    def test_x_zero_is_geometric(self):
        for eta in (0.2, 1.0, 3.7):
            r = sum_direct(SumParams(eta, 2.2, 0.0))
            assert r.value == pytest.approx((1 + eta) / eta, rel=1e-13)

    def test_x_one_single_term(self):
        r = sum_direct(SumParams(2.0, 2.5, 1.0))
        # 2F1(1/2, 1; c; 1) = (2c-2)/(2c-3)
        assert r.value == pytest.approx(3.0 / 2.0, rel=1e-14)
        assert r.terms_used == 1
        assert r.method is Method.GaussPoint

    def test_x_one_small_c_rejected(self):
        with pytest.raises(NotConvergent):
            sum_direct(SumParams(2.0, 1.2, 1.0))
        # Override cannot help at x = 1: the k = 0 term itself is infinite.
        with pytest.raises(NotConvergent):
            sum_direct(SumParams(2.0, 1.2, 1.0), override_divergence=True)

    def test_divergent_raises(self):
        with pytest.raises(NotConvergent):
            sum_direct(SumParams(0.5, 1.0, 0.5))

    def test_override_shows_blowup(self):
        r = sum_direct(SumParams(0.5, 1.0, 0.5), max_terms=500,
                       override_divergence=True)
        assert math.isfinite(r.value)
        assert r.value > 1e6
        assert r.abs_error_estimate > 0.0

    def test_boundary_runs_to_cap_with_tail_bound(self):
        # eta = sqrt(x), c = 2: converges like k^(-3/2) to 20/7.
        r = sum_direct(SumParams(0.7, 2.0, 0.49), max_terms=20000)
        assert r.terms_used == 20001
        assert r.abs_error_estimate < 0.05
        assert abs(r.value - 20.0 / 7.0) <= 3 * r.abs_error_estimate

    def test_slow_convergence_raises(self):
        with pytest.raises(SlowConvergence):
            sum_direct(SumParams(0.43, 2.0, 0.16), max_terms=10)

    def test_error_estimate_covers_truth(self):
        for eta, c, x in ((1.3, 1.7, 0.8), (1.3, 3.2, -0.6), (2.0, 1.7, 0.3),
                          (2.0, 3.2, 0.8), (1.0, 2.5, -0.95)):
            X = (x + eta) / (1 + eta)
            ref = float(mp_hyp2f1(0.5, 1.0, c, x / X ** 2) / X)
            r = sum_direct(SumParams(eta, c, x))
            assert abs(r.value - ref) <= 10 * r.abs_error_estimate + 1e-13


class TestSumClosed:
    def test_matches_direct_route(self):
        for eta, c, x in ((2.0, 2.5, 0.5), (0.7, 1.3, -0.5), (1.0, 4.1, 0.9),
                          (0.6, 2.0, 0.3)):
            a = sum_closed(SumParams(eta, c, x)).value
            b = sum_direct(SumParams(eta, c, x)).value
            assert a == pytest.approx(b, rel=5e-12)

    def test_continuation_past_minus_eta(self):
        # x < -eta flips the sign of X; the elementary branch carries on.
        r = sum_closed(SumParams(0.4, 2.0, -0.8))
        assert r.continuation
        assert r.value == pytest.approx(3.0616681035935690577, rel=1e-13)
        d = sum_direct(SumParams(0.4, 2.0, -0.8))
        assert r.value == pytest.approx(d.value, rel=1e-11)

    def test_continuation_needs_elementary_c(self):
        with pytest.raises(DomainError):
            sum_closed(SumParams(0.4, 2.5, -0.8))

    def test_limit_at_minus_eta(self):
        # Gamma(c)/Gamma(c - 1/2) sqrt(pi/eta) at 40 digits
        r = sum_closed(SumParams(0.6, 1.4, -0.6))
        assert r.value == pytest.approx(1.8998759620325243942, rel=1e-13)
        assert r.method is Method.ClosedForm
        with pytest.raises(DomainError):
            sum_closed(SumParams(0.6, 0.4, -0.6))

    def test_xi_above_one_rejected(self):
        with pytest.raises(DomainError):
            sum_closed(SumParams(0.5, 2.0, 0.3))

    def test_xi_one_needs_large_c(self):
        # x = eta^2 lands exactly on xi = 1.
        with pytest.raises(DomainError):
            sum_closed(SumParams(0.7, 1.2, 0.49))
        r = sum_closed(SumParams(0.7, 2.0, 0.49))
        assert r.value == pytest.approx(20.0 / 7.0, rel=1e-12)


class TestSumSpecial:
    def test_elementary_values(self):
        assert sum_special(SumParams(1.0, 3.0, -1.0)).value == pytest.approx(
            8.0 / 3.0, rel=1e-14)
        # At x = 1 the conjugate root vanishes and the forms collapse.
        assert sum_special(SumParams(2.0, 2.0, 1.0)).value == pytest.approx(2.0, rel=1e-14)
        assert sum_special(SumParams(2.0, 3.0, 1.0)).value == pytest.approx(
            4.0 / 3.0, rel=1e-14)

    def test_agrees_with_series(self):
        for c in (1.0, 2.0, 3.0):
            for eta, x in ((1.5, 0.6), (0.8, -0.5), (1.0, -1.0)):
                a = sum_special(SumParams(eta, c, x)).value
                b = sum_direct(SumParams(eta, c, x)).value
                assert a == pytest.approx(b, rel=5e-12)

    def test_rejects_other_c(self):
        with pytest.raises(DomainError):
            sum_special(SumParams(1.0, 4.0, 0.5))

    def test_rejects_divergent(self):
        with pytest.raises(DomainError):
            sum_special(SumParams(0.4, 2.0, 0.25))

    def test_c_one_excluded_from_boundary(self):
        with pytest.raises(DomainError):
            sum_special(SumParams(0.5, 1.0, 0.25))
        assert sum_special(SumParams(0.5, 2.0, 0.25)).value == pytest.approx(
            2.0 * 1.5 / 0.75, rel=1e-14)


class TestEvaluate:
    def test_auto_prefers_closed(self):
        r = evaluate(SumParams(2.0, 2.5, 0.5))
        assert r.terms_used < 200
        assert r.value == pytest.approx(1.4680827863644511378, rel=1e-12)

    def test_auto_falls_back_on_continuation_gap(self):
        # Closed route has no c = 2.5 continuation below -eta; the series
        # still converges there and auto must find it.
        r = evaluate(SumParams(0.4, 2.5, -0.8))
        assert r.method is Method.Series
        assert r.value == pytest.approx(sum_direct(SumParams(0.4, 2.5, -0.8)).value)

    def test_auto_degenerate_argument_goes_direct(self):
        # xi = 1 with c <= 3/2 is divergent; the direct route says so
        # instead of the closed form's blunter domain complaint.
        with pytest.raises(NotConvergent):
            evaluate(SumParams(0.5, 1.2, 0.25))

    def test_explicit_methods(self):
        p = SumParams(1.0, 3.0, -1.0)
        assert evaluate(p, method="special").value == pytest.approx(8.0 / 3.0, rel=1e-14)
        assert evaluate(p, method="direct").value == pytest.approx(8.0 / 3.0, rel=1e-12)
        assert evaluate(p, method="closed").value == pytest.approx(8.0 / 3.0, rel=1e-13)
        with pytest.raises(ValueError):
            evaluate(p, method="newton")


class TestLetacSum:
    def test_reference_value_both_routes(self):
        # z = 0.3, c = 2.5, x = 0.25 at 40 digits
        ref = 0.48595990929348023965
        assert letac_sum(0.3, 2.5, 0.25).value == pytest.approx(ref, rel=1e-13)
        r = letac_sum(0.3, 2.5, 0.25, method="direct")
        assert r.value == pytest.approx(ref, rel=1e-12)
        assert r.method is Method.Series

    def test_domain(self):
        with pytest.raises(DomainError):
            letac_sum(0.0, 2.0, 0.1)
        with pytest.raises(DomainError):
            letac_sum(1.0, 2.0, 0.1)
        with pytest.raises(DomainError):
            letac_sum(0.3, 2.0, 0.49)  # needs x < (1-z)^2
        with pytest.raises(DomainError):
            letac_sum(0.3, -1.0, 0.1)
        with pytest.raises(ValueError):
            letac_sum(0.3, 2.0, 0.1, method="auto")

    def test_routes_agree_on_grid(self):
        for z in (0.1, 0.45, 0.8):
            for x_frac in (0.2, 0.9):
                x = x_frac * (1 - z) ** 2
                for c in (0.8, 2.0, 3.3):
                    a = letac_sum(z, c, x).value
                    b = letac_sum(z, c, x, method="direct").value
                    assert a == pytest.approx(b, rel=1e-10)


class TestNormalizationIdentity:
    def test_unity_across_x(self):
        for x in (-1.0, -0.4, 0.0, 0.37, 0.9, 1.0):
            assert normalization_identity(x) == pytest.approx(1.0, rel=5e-11)
