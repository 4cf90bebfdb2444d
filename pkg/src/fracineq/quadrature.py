"""Adaptive Gauss-Legendre quadrature on finite intervals.

The engine is a fixed 21-point Gauss-Legendre panel rule with globally
adaptive bisection: the panel with the worst two-level error estimate is
split until the summed estimate meets the requested absolute tolerance.

Algebraic endpoint singularities ``(t - c)^gamma`` with gamma in (-1, 0)
are removed before panel quadrature by the power substitution
``v = (distance to c)^(gamma + 1)``: the transformed integrand is bounded,
and Gauss-Legendre nodes never touch the endpoint itself.  Integrands may
optionally supply a ``regular_part(t, distance)`` callable factoring out
the singular power exactly; the RL operators use this to keep the kernel
evaluation free of the cancellation incurred when an integrand recovers
the endpoint distance from ``t`` by subtraction.

Integrands singular at both endpoints are handled by the caller splitting
the interval once (interval additivity holds to tolerance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappush, heappop
from typing import Callable, Literal

import numpy as np

from .errors import AccuracyError, DomainError, IntegrandError

__all__ = [
    "Interval",
    "EndpointSingularity",
    "Integrand",
    "QuadResult",
    "integrate",
]

PANEL_ORDER = 21
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(PANEL_ORDER)
_NODES = tuple(float(v) for v in _NODES)
_WEIGHTS = tuple(float(v) for v in _WEIGHTS)

DEFAULT_MAX_EVALS = 1_000_000
MIN_ABS_TOL = 1e-14
MAX_ABS_TOL = 1e-2


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b, both finite."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise DomainError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse 'a,b' (as used by the CLI and sweep configs)."""
        parts = text.split(",")
        if len(parts) != 2:
            raise DomainError(f"interval must be 'a,b', got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise DomainError(f"interval must be numeric 'a,b', got {text!r}") from exc


@dataclass(frozen=True)
class EndpointSingularity:
    """Declares eval(t) ~ (distance to endpoint)^exponent near one endpoint.

    ``exponent`` must lie in (-1, 0).  ``regular_part(t, d)``, when given,
    must satisfy eval(t) = d^exponent * regular_part(t, d) with d the
    distance to the singular endpoint; it is bounded near the endpoint.
    """

    side: Literal["left", "right"]
    exponent: float
    regular_part: Callable[[float, float], float] | None = None

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise DomainError(f"singularity side must be 'left' or 'right', got {self.side!r}")
        if not (-1.0 < self.exponent < 0.0):
            raise DomainError(
                f"singular exponent must lie in (-1, 0), got {self.exponent}")


@dataclass(frozen=True)
class Integrand:
    """A scalar integrand, optionally tagged with one endpoint singularity."""

    fn: Callable[[float], float]
    singularity: EndpointSingularity | None = None


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int


class _Budget:
    __slots__ = ("used", "limit")

    def __init__(self, limit: int):
        self.used = 0
        self.limit = limit


def _panel(fn, a: float, b: float, budget: _Budget, best: Callable[[], tuple]) -> float:
    if budget.used + PANEL_ORDER > budget.limit:
        value, err = best()
        raise AccuracyError(
            f"evaluation budget {budget.limit} exhausted before reaching tolerance",
            best_estimate=value, error_estimate=err, evaluations=budget.used)
    budget.used += PANEL_ORDER
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    acc = 0.0
    for xi, wi in zip(_NODES, _WEIGHTS):
        t = c + h * xi
        v = float(fn(t))
        if not math.isfinite(v):
            raise IntegrandError(f"integrand returned non-finite value {v!r} at t={t!r}")
        acc += wi * v
    return h * acc


def _adaptive(fn, a: float, b: float, abs_tol: float, budget: _Budget) -> QuadResult:
    # Segment = (neg_err, seq, lo, hi, mid, left_half, right_half, refined,
    # err); the global value/error are the sums of refined values and
    # |refined - coarse| estimates.  The minimum splittable width guards
    # against stalling on roundoff.
    min_width = 64.0 * math.ulp(max(abs(a), abs(b), 1.0))
    heap: list = []
    seq = 0
    total_value = 0.0
    total_err = 0.0

    def best() -> tuple:
        return total_value, total_err

    def make_segment(lo: float, hi: float, coarse: float):
        nonlocal seq, total_value, total_err
        m = 0.5 * (lo + hi)
        left = _panel(fn, lo, m, budget, best)
        right = _panel(fn, m, hi, budget, best)
        refined = left + right
        err = abs(refined - coarse)
        heappush(heap, (-err, seq, lo, hi, m, left, right, refined, err))
        seq += 1
        total_value += refined
        total_err += err

    coarse0 = _panel(fn, a, b, budget, best)
    make_segment(a, b, coarse0)

    while total_err > abs_tol:
        neg_err, _, lo, hi, m, left, right, refined, err = heappop(heap)
        if hi - lo <= min_width:
            # cannot usefully split further; everything else on the heap has
            # an error at most this one's, so the tolerance is unreachable
            heappush(heap, (neg_err, seq, lo, hi, m, left, right, refined, err))
            raise AccuracyError(
                f"tolerance {abs_tol} unreachable (minimum panel width hit)",
                best_estimate=total_value, error_estimate=total_err,
                evaluations=budget.used)
        total_value -= refined
        total_err -= err
        make_segment(lo, m, left)
        make_segment(m, hi, right)

    return QuadResult(value=total_value, error_estimate=total_err,
                      evaluations=budget.used)


def _transform_singular(integrand: Integrand, interval: Interval):
    """Map a singular-endpoint integrand onto a bounded one on [0, V]."""
    sing = integrand.singularity
    gamma = sing.exponent
    beta = gamma + 1.0          # in (0, 1)
    inv_beta = 1.0 / beta
    length = interval.length
    v_max = length ** beta
    endpoint = interval.a if sing.side == "left" else interval.b
    sign = 1.0 if sing.side == "left" else -1.0
    fn = integrand.fn
    regular = sing.regular_part

    if regular is not None:
        # eval(t) = d^gamma * regular(t, d), so the substitution weight
        # d^gamma * v^(1/beta - 1) cancels exactly and only (1/beta)*regular
        # remains.
        def transformed(v: float) -> float:
            d = v ** inv_beta
            return inv_beta * regular(endpoint + sign * d, d)
    else:
        def transformed(v: float) -> float:
            d = v ** inv_beta
            t = endpoint + sign * d
            if d == 0.0 or t == endpoint:
                # the node is closer to the endpoint than float spacing can
                # represent, so fn cannot be evaluated there; the true
                # transformed integrand is bounded and the region negligible
                return 0.0
            return inv_beta * fn(t) * v ** (inv_beta - 1.0)

    return transformed, v_max


def integrate(f: Integrand | Callable[[float], float],
              interval: Interval,
              abs_tol: float = 1e-10,
              max_evals: int = DEFAULT_MAX_EVALS) -> QuadResult:
    """Integrate ``f`` over ``interval`` to absolute tolerance ``abs_tol``.

    ``f`` may be a plain callable or an :class:`Integrand`; declare a
    singular endpoint to have the power substitution applied.  Raises
    :class:`IntegrandError` on non-finite interior values and
    :class:`AccuracyError` (carrying the best estimate) if the tolerance
    cannot be met within ``max_evals`` evaluations.
    """
    if callable(f) and not isinstance(f, Integrand):
        f = Integrand(fn=f)
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    abs_tol = float(abs_tol)
    if not (MIN_ABS_TOL <= abs_tol <= MAX_ABS_TOL):
        raise DomainError(
            f"abs_tol must lie in [{MIN_ABS_TOL}, {MAX_ABS_TOL}], got {abs_tol}")
    if max_evals < PANEL_ORDER * 3:
        raise DomainError(f"max_evals too small to evaluate anything: {max_evals}")

    budget = _Budget(max_evals)
    if f.singularity is None:
        return _adaptive(f.fn, interval.a, interval.b, abs_tol, budget)

    transformed, v_max = _transform_singular(f, interval)
    return _adaptive(transformed, 0.0, v_max, abs_tol, budget)
