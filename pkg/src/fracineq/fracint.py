"""Left and right Riemann-Liouville fractional integral operators.

For order alpha > 0,

    left  J_{a+}^alpha f(x) = (1/Gamma(alpha)) int_a^x (x-t)^(alpha-1) f(t) dt
    right J_{b-}^alpha f(x) = (1/Gamma(alpha)) int_x^b (t-x)^(alpha-1) f(t) dt

At alpha = 1 both reduce to the ordinary integral.  For alpha < 1 the
kernel is an algebraic endpoint singularity and is declared to the
quadrature engine (with its regular part f supplied directly, so the
kernel power is never reconstructed from a cancelling subtraction); for
alpha >= 1 the kernel is bounded and no tag is needed.

Orders alpha = 0 are rejected: the identity-operator convention
J^0 f = f is documented but not implemented as an order value.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import DomainError
from .quadrature import (
    MAX_ABS_TOL,
    MIN_ABS_TOL,
    EndpointSingularity,
    Integrand,
    Interval,
    integrate,
)
from .specfun import gamma

__all__ = ["left_rl", "right_rl", "Interval"]

DEFAULT_ABS_TOL = 1e-10


def _engine_tol(tol: float) -> float:
    # derived tolerances (abs_tol scaled by Gamma(alpha)) are clamped into
    # the engine's contract range; accuracy degrades gracefully at the ends
    return min(MAX_ABS_TOL, max(MIN_ABS_TOL, tol))


def _value_fn(f) -> Callable[[float], float]:
    """Accept either a plain callable or a catalog TestFunction."""
    fn = getattr(f, "fn", None)
    if fn is not None and callable(fn):
        return fn
    if callable(f):
        return f
    raise DomainError(f"f must be callable or carry a .fn channel, got {type(f)!r}")


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise DomainError(f"fractional order alpha must be finite and > 0, got {alpha}")
    return alpha


def left_rl(f, alpha: float, a: float, x: float,
            abs_tol: float = DEFAULT_ABS_TOL) -> float:
    """J_{a+}^alpha f(x) for x > a, to absolute tolerance ``abs_tol``."""
    alpha = _check_alpha(alpha)
    if not x > a:
        raise DomainError(f"left operator requires x > a, got a={a}, x={x}")
    fv = _value_fn(f)
    g = gamma(alpha)

    if alpha == 1.0:
        integrand = Integrand(fn=fv)
    elif alpha < 1.0:
        integrand = Integrand(
            fn=lambda t: (x - t) ** (alpha - 1.0) * fv(t),
            singularity=EndpointSingularity(
                side="right", exponent=alpha - 1.0,
                regular_part=lambda t, d: fv(t)),
        )
    else:
        integrand = Integrand(fn=lambda t: (x - t) ** (alpha - 1.0) * fv(t))

    res = integrate(integrand, Interval(a, x), abs_tol=_engine_tol(abs_tol * g))
    return res.value / g


def right_rl(f, alpha: float, b: float, x: float,
             abs_tol: float = DEFAULT_ABS_TOL) -> float:
    """J_{b-}^alpha f(x) for x < b, to absolute tolerance ``abs_tol``."""
    alpha = _check_alpha(alpha)
    if not x < b:
        raise DomainError(f"right operator requires x < b, got b={b}, x={x}")
    fv = _value_fn(f)
    g = gamma(alpha)

    if alpha == 1.0:
        integrand = Integrand(fn=fv)
    elif alpha < 1.0:
        integrand = Integrand(
            fn=lambda t: (t - x) ** (alpha - 1.0) * fv(t),
            singularity=EndpointSingularity(
                side="left", exponent=alpha - 1.0,
                regular_part=lambda t, d: fv(t)),
        )
    else:
        integrand = Integrand(fn=lambda t: (t - x) ** (alpha - 1.0) * fv(t))

    res = integrate(integrand, Interval(x, b), abs_tol=_engine_tol(abs_tol * g))
    return res.value / g
