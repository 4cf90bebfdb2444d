"""Closed-form bound evaluators for the fractional trapezoid defect.

The common left-hand side of every inequality handled here is the
trapezoid defect

    D(f, [a,b], alpha) = (f(a) + f(b))/2
        - Gamma(alpha+1) / (2 (b-a)^alpha) * [J_{a+}^alpha f(b) + J_{b-}^alpha f(a)]

which, for twice differentiable f, equals the exact weighted curvature
integral

    (b-a)^2 / (2 (alpha+1)) *
        int_0^1 t (1 - t^alpha) [f''(ta + (1-t)b) + f''((1-t)a + tb)] dt.

Upper bounds for |D| follow from convexity hypotheses on |f''| or
|f''|^q; each evaluator certifies its hypothesis on the given interval
before computing (raising :class:`PreconditionError` when the grid
certifier finds a violation).  The Hoelder-route and midpoint-concavity
bounds rely on a kernel comparison that is valid for alpha <= 1 only;
the evaluators still compute outside that range and the sweep reports
such rows as out-of-validated-range instead of asserting them.

All inequality verification uses an absolute slack of 1e-8 by default,
with quadrature run two orders tighter so numerical error cannot
masquerade as a genuine violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError
from .fracint import left_rl, right_rl
from .funclib import (
    DEFAULT_GRID_N,
    DEFAULT_SLACK,
    TestFunction,
    certify_s_concave,
    certify_s_convex,
)
from .quadrature import MAX_ABS_TOL, MIN_ABS_TOL, Interval, integrate
from .specfun import beta, gamma, log_beta

__all__ = [
    "BoundParams",
    "DefectResult",
    "SandwichResult",
    "WeightIntegralEntry",
    "WeightIntegralReport",
    "trapezoid_defect",
    "defect_identity_rhs",
    "s_convex_sandwich",
    "defect_bound_s_convex",
    "defect_bound_holder",
    "defect_bound_power_mean",
    "defect_bound_s_concave",
    "classical_convex_bound",
    "classical_holder_bound",
    "classical_power_mean_bound",
    "classical_concave_bound",
    "weight_integral_report",
    "HOLDER_VALID_ALPHA_MAX",
]

DEFAULT_QUAD_TOL = 1e-10
DEFAULT_INEQ_SLACK = 1e-8
# The kernel comparison 1 - t^alpha <= (1 - t)^alpha holds iff alpha <= 1;
# the Hoelder/concave bounds are only claimed on that range.
HOLDER_VALID_ALPHA_MAX = 1.0


def _engine_tol(tol: float) -> float:
    # keep derived tolerances inside the quadrature engine's contract range
    return min(MAX_ABS_TOL, max(MIN_ABS_TOL, tol))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise DomainError(f"alpha must be finite and > 0, got {alpha}")
    return alpha


def _check_s(s: float) -> float:
    s = float(s)
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0, 1], got {s}")
    return s


@dataclass(frozen=True)
class BoundParams:
    """Parameter tuple (alpha, s, p, q).

    When p is given it must exceed 1 and q must be its Hoelder conjugate
    p/(p-1) (q is derived when omitted).  Without p, q >= 1 is the
    power-mean exponent.
    """

    alpha: float
    s: float
    p: float | None = None
    q: float | None = None

    def __post_init__(self):
        _check_alpha(self.alpha)
        _check_s(self.s)
        if self.p is not None:
            p = float(self.p)
            if not (math.isfinite(p) and p > 1.0):
                raise DomainError(f"p must be finite and > 1, got {p}")
            conj = p / (p - 1.0)
            if self.q is None:
                object.__setattr__(self, "q", conj)
            elif abs(1.0 / p + 1.0 / float(self.q) - 1.0) > 1e-14:
                raise DomainError(
                    f"q={self.q} is not the Hoelder conjugate of p={p}")
        elif self.q is not None:
            if not (math.isfinite(float(self.q)) and float(self.q) >= 1.0):
                raise DomainError(f"power-mean exponent q must be >= 1, got {self.q}")


@dataclass(frozen=True)
class DefectResult:
    """Trapezoid defect plus the pieces it was assembled from."""

    lhs: float
    left_j: float
    right_j: float
    quad_tol_used: float
    fa: float
    fb: float
    alpha: float
    interval: Interval

    @property
    def abs_lhs(self) -> float:
        return abs(self.lhs)


@dataclass(frozen=True)
class SandwichResult:
    """Three-part sandwich for a nonnegative s-convex function.

    ``upper`` uses the 1/(s+1) endpoint coefficient; ``upper_classical``
    records the alternative (f(a)+f(b))/2 reading so both are observable.
    """

    lower: float
    mean: float
    upper: float
    upper_classical: float


def _d2_abs(f: TestFunction):
    d2 = f.d2
    return lambda t: np.abs(d2(t))


def _d2_abs_pow(f: TestFunction, q: float):
    d2 = f.d2
    return lambda t: np.abs(d2(t)) ** q


def _require(result, what: str):
    if not result.passed:
        raise PreconditionError(
            f"certification failed: {what} (witness {result.witness})",
            witness=result.witness)


def trapezoid_defect(f, interval: Interval, alpha: float,
                     quad_tol: float = DEFAULT_QUAD_TOL) -> DefectResult:
    """Compute the trapezoid defect; |total error| <= quad_tol."""
    alpha = _check_alpha(alpha)
    a, b = interval.a, interval.b
    fv = f.fn if isinstance(f, TestFunction) else f
    fa, fb = float(fv(a)), float(fv(b))
    coeff = gamma(alpha + 1.0) / (2.0 * (b - a) ** alpha)
    # split the error budget between the two operator calls
    rl_tol = _engine_tol(quad_tol / (2.0 * coeff))
    left = left_rl(fv, alpha, a, b, abs_tol=rl_tol)
    right = right_rl(fv, alpha, b, a, abs_tol=rl_tol)
    lhs = 0.5 * (fa + fb) - coeff * (left + right)
    return DefectResult(lhs=lhs, left_j=left, right_j=right,
                        quad_tol_used=quad_tol, fa=fa, fb=fb,
                        alpha=alpha, interval=interval)


def defect_identity_rhs(f: TestFunction, interval: Interval, alpha: float,
                        quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Weighted curvature integral equal to the trapezoid defect."""
    alpha = _check_alpha(alpha)
    a, b = interval.a, interval.b
    d2 = f.d2
    coeff = (b - a) ** 2 / (2.0 * (alpha + 1.0))

    def weight_integrand(t: float) -> float:
        return t * (1.0 - t ** alpha) * (
            d2(t * a + (1.0 - t) * b) + d2((1.0 - t) * a + t * b))

    res = integrate(weight_integrand, Interval(0.0, 1.0),
                    abs_tol=_engine_tol(quad_tol / coeff))
    return coeff * res.value


def s_convex_sandwich(f, interval: Interval, s: float,
                      quad_tol: float = DEFAULT_QUAD_TOL,
                      grid_n: int = DEFAULT_GRID_N,
                      slack: float = DEFAULT_SLACK) -> SandwichResult:
    """Sandwich 2^(s-1) f(mid) <= mean(f) <= (f(a)+f(b))/(s+1).

    Requires f >= 0 and s-convex (certified on the interval); the interval
    must start at a >= 0.
    """
    s = _check_s(s)
    fv = f.fn if isinstance(f, TestFunction) else f
    cert = certify_s_convex(fv, interval, s, grid_n=grid_n, slack=slack)
    _require(cert, f"f is not s-convex at s={s} on [{interval.a}, {interval.b}]")
    grid = np.linspace(interval.a, interval.b, grid_n)
    vals = np.asarray([fv(float(t)) for t in grid], dtype=float)
    if vals.min() < -slack:
        raise PreconditionError(
            f"f must be nonnegative on the interval; min sampled value {vals.min()}")

    fa, fb = float(fv(interval.a)), float(fv(interval.b))
    mean_res = integrate(fv, interval,
                         abs_tol=_engine_tol(quad_tol * interval.length))
    mean = mean_res.value / interval.length
    return SandwichResult(
        lower=2.0 ** (s - 1.0) * float(fv(interval.midpoint)),
        mean=mean,
        upper=(fa + fb) / (s + 1.0),
        upper_classical=0.5 * (fa + fb),
    )


def _weight_bracket(alpha: float, s: float) -> float:
    """int_0^1 t^(s+1)(1-t^alpha) dt + int_0^1 t(1-t^alpha)(1-t)^s dt,
    in closed form."""
    return (alpha / ((s + 2.0) * (alpha + s + 2.0))
            + beta(2.0, s + 1.0) - beta(alpha + 2.0, s + 1.0))


def defect_bound_s_convex(f: TestFunction, interval: Interval, alpha: float,
                          s: float, grid_n: int = DEFAULT_GRID_N,
                          slack: float = DEFAULT_SLACK,
                          certify: bool = True) -> float:
    """Bound on |defect| when |f''| is s-convex (valid for every alpha > 0).

    ``certify=False`` skips the hypothesis check for callers that have
    already certified the channel themselves.
    """
    alpha = _check_alpha(alpha)
    s = _check_s(s)
    if certify:
        cert = certify_s_convex(_d2_abs(f), interval, s, grid_n=grid_n,
                                slack=slack)
        _require(cert,
                 f"|f''| is not s-convex at s={s} on [{interval.a}, {interval.b}]")
    a, b = interval.a, interval.b
    second = abs(float(f.d2(a))) + abs(float(f.d2(b)))
    return (b - a) ** 2 / (2.0 * (alpha + 1.0)) * _weight_bracket(alpha, s) * second


def _beta_root(p: float, alpha: float) -> float:
    # beta(p+1, alpha p + 1)^(1/p) via log-beta, stable for large p
    return math.exp(log_beta(p + 1.0, alpha * p + 1.0) / p)


def defect_bound_holder(f: TestFunction, interval: Interval,
                        params: BoundParams, grid_n: int = DEFAULT_GRID_N,
                        slack: float = DEFAULT_SLACK,
                        certify: bool = True) -> float:
    """Hoelder-route bound when |f''|^q is s-convex (q conjugate to p).

    The kernel comparison behind it holds for alpha <= 1; callers decide
    how to treat larger orders.
    """
    if params.p is None:
        raise DomainError("Hoelder bound requires p > 1 in params")
    alpha, s, p, q = params.alpha, params.s, params.p, params.q
    if certify:
        cert = certify_s_convex(_d2_abs_pow(f, q), interval, s,
                                grid_n=grid_n, slack=slack)
        _require(cert, f"|f''|^q is not s-convex at s={s}, q={q:g}")
    a, b = interval.a, interval.b
    av = abs(float(f.d2(a))) ** q
    bv = abs(float(f.d2(b))) ** q
    return ((b - a) ** 2 / (alpha + 1.0) * _beta_root(p, alpha)
            * ((av + bv) / (s + 1.0)) ** (1.0 / q))


def defect_bound_power_mean(f: TestFunction, interval: Interval, alpha: float,
                            s: float, q: float, grid_n: int = DEFAULT_GRID_N,
                            slack: float = DEFAULT_SLACK,
                            certify: bool = True) -> float:
    """Power-mean-route bound when |f''|^q is s-convex, q >= 1 (any alpha)."""
    alpha = _check_alpha(alpha)
    s = _check_s(s)
    q = float(q)
    if q < 1.0:
        raise DomainError(f"power-mean exponent q must be >= 1, got {q}")
    if certify:
        cert = certify_s_convex(_d2_abs_pow(f, q), interval, s,
                                grid_n=grid_n, slack=slack)
        _require(cert, f"|f''|^q is not s-convex at s={s}, q={q:g}")
    a, b = interval.a, interval.b
    av = abs(float(f.d2(a))) ** q
    bv = abs(float(f.d2(b))) ** q
    w1 = (2.0 * alpha + 4.0) / ((s + 2.0) * (alpha + s + 2.0))
    w2 = ((beta(2.0, s + 1.0) - beta(alpha + 2.0, s + 1.0))
          * (2.0 * alpha + 4.0) / alpha)
    lead = alpha * (b - a) ** 2 / (4.0 * (alpha + 1.0) * (alpha + 2.0))
    return lead * ((av * w1 + bv * w2) ** (1.0 / q)
                   + (av * w2 + bv * w1) ** (1.0 / q))


def defect_bound_s_concave(f: TestFunction, interval: Interval,
                           params: BoundParams, grid_n: int = DEFAULT_GRID_N,
                           slack: float = DEFAULT_SLACK,
                           certify: bool = True) -> float:
    """Midpoint bound when |f''|^q is s-concave (q conjugate to p).

    Shares the alpha <= 1 kernel-comparison caveat with the Hoelder bound.
    """
    if params.p is None:
        raise DomainError("s-concave bound requires p > 1 in params")
    alpha, s, p, q = params.alpha, params.s, params.p, params.q
    if certify:
        cert = certify_s_concave(_d2_abs_pow(f, q), interval, s,
                                 grid_n=grid_n, slack=slack)
        _require(cert, f"|f''|^q is not s-concave at s={s}, q={q:g}")
    a, b = interval.a, interval.b
    mid = abs(float(f.d2(0.5 * (a + b))))
    return ((b - a) ** 2 / (alpha + 1.0) * _beta_root(p, alpha)
            * 2.0 ** ((s - 1.0) / q) * mid)


# ---------------------------------------------------------------------------
# classical convex/concave (s = 1) baseline formulas, kept for comparison


def classical_convex_bound(f: TestFunction, interval: Interval,
                           alpha: float) -> float:
    """Baseline bound for convex |f''|:
    (b-a)^2/(alpha+1) * beta(2, alpha+1) * (|f''(a)| + |f''(b)|)/2.

    Note: its weight coefficient beta(2, alpha+1) agrees with the s = 1
    weight bracket alpha/(2(alpha+2)) only at alpha = 1.
    """
    alpha = _check_alpha(alpha)
    a, b = interval.a, interval.b
    second = 0.5 * (abs(float(f.d2(a))) + abs(float(f.d2(b))))
    return (b - a) ** 2 / (alpha + 1.0) * beta(2.0, alpha + 1.0) * second


def classical_holder_bound(f: TestFunction, interval: Interval, alpha: float,
                           p: float) -> float:
    """Baseline Hoelder bound for convex |f''|^q, q = p/(p-1)."""
    alpha = _check_alpha(alpha)
    p = float(p)
    if p <= 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    q = p / (p - 1.0)
    a, b = interval.a, interval.b
    av = abs(float(f.d2(a))) ** q
    bv = abs(float(f.d2(b))) ** q
    return ((b - a) ** 2 / (alpha + 1.0) * _beta_root(p, alpha)
            * (0.5 * (av + bv)) ** (1.0 / q))


def classical_power_mean_bound(f: TestFunction, interval: Interval,
                               alpha: float, q: float) -> float:
    """Baseline power-mean bound for convex |f''|^q, q >= 1."""
    alpha = _check_alpha(alpha)
    q = float(q)
    if q < 1.0:
        raise DomainError(f"q must be >= 1, got {q}")
    a, b = interval.a, interval.b
    av = abs(float(f.d2(a))) ** q
    bv = abs(float(f.d2(b))) ** q
    w1 = (2.0 * alpha + 4.0) / (3.0 * alpha + 9.0)
    w2 = (alpha + 5.0) / (3.0 * alpha + 9.0)
    lead = alpha * (b - a) ** 2 / (4.0 * (alpha + 1.0) * (alpha + 2.0))
    return lead * ((w1 * av + w2 * bv) ** (1.0 / q)
                   + (w2 * av + w1 * bv) ** (1.0 / q))


def classical_concave_bound(f: TestFunction, interval: Interval, alpha: float,
                            p: float) -> float:
    """Baseline midpoint bound for concave |f''|^q, q = p/(p-1)."""
    alpha = _check_alpha(alpha)
    p = float(p)
    if p <= 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    a, b = interval.a, interval.b
    mid = abs(float(f.d2(0.5 * (a + b))))
    return (b - a) ** 2 / (alpha + 1.0) * _beta_root(p, alpha) * mid


# ---------------------------------------------------------------------------
# quadrature-vs-closed-form checks for the weight integrals


@dataclass(frozen=True)
class WeightIntegralEntry:
    check_id: str
    lhs: float          # quadrature value
    rhs: float          # closed form / upper bound
    margin: float       # rhs - lhs (inequality) or -|lhs - rhs| (identity)
    holds: bool
    in_validated_range: bool


@dataclass(frozen=True)
class WeightIntegralReport:
    alpha: float
    s: float
    p: float
    entries: tuple[WeightIntegralEntry, ...]

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries if e.in_validated_range)


def weight_integral_report(alpha: float, s: float, p: float,
                           tol: float = 1e-9,
                           quad_tol: float = DEFAULT_QUAD_TOL) -> WeightIntegralReport:
    """Verify the closed forms of the bound-weight integrals by quadrature.

    Identities (any alpha > 0):
      int_0^1 t^(s+1) (1 - t^alpha) dt = alpha / ((s+2)(alpha+s+2))
      int_0^1 t (1 - t^alpha) (1-t)^s dt = beta(2, s+1) - beta(alpha+2, s+1)
      int_0^1 t^s dt = 1/(s+1)
    Inequality (validated for alpha <= 1, measured elsewhere):
      int_0^1 t^p (1 - t^alpha)^p dt <= beta(p+1, alpha p + 1)
    """
    alpha = _check_alpha(alpha)
    s = _check_s(s)
    p = float(p)
    if p <= 1.0:
        raise DomainError(f"p must be > 1, got {p}")
    unit = Interval(0.0, 1.0)

    entries = []

    def identity(check_id: str, quad_val: float, closed: float):
        diff = abs(quad_val - closed)
        entries.append(WeightIntegralEntry(
            check_id=check_id, lhs=quad_val, rhs=closed, margin=-diff,
            holds=diff <= tol, in_validated_range=True))

    q1 = integrate(lambda t: t ** (s + 1.0) * (1.0 - t ** alpha), unit,
                   abs_tol=quad_tol).value
    identity("weight_int_power", q1, alpha / ((s + 2.0) * (alpha + s + 2.0)))

    q2 = integrate(lambda t: t * (1.0 - t ** alpha) * (1.0 - t) ** s, unit,
                   abs_tol=quad_tol).value
    identity("weight_int_beta", q2,
             beta(2.0, s + 1.0) - beta(alpha + 2.0, s + 1.0))

    q3 = integrate(lambda t: t ** s, unit, abs_tol=quad_tol).value
    identity("weight_int_plain", q3, 1.0 / (s + 1.0))

    q4 = integrate(lambda t: t ** p * (1.0 - t ** alpha) ** p, unit,
                   abs_tol=quad_tol).value
    bound = beta(p + 1.0, alpha * p + 1.0)
    margin = bound - q4
    entries.append(WeightIntegralEntry(
        check_id="holder_kernel_bound", lhs=q4, rhs=bound, margin=margin,
        holds=margin >= -tol,
        in_validated_range=alpha <= HOLDER_VALID_ALPHA_MAX))

    return WeightIntegralReport(alpha=alpha, s=s, p=p, entries=tuple(entries))
