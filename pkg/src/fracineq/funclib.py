"""Test-function catalog and grid certifier of s-convexity in the second sense.

A function f on a domain inside [0, inf) is s-convex in the second sense
(s in (0, 1]) when

    f(lam*x + (1-lam)*y) <= lam^s f(x) + (1-lam)^s f(y)

for all x, y in the domain and lam in [0, 1]; s-concavity reverses the
inequality.  s = 1 recovers ordinary convexity/concavity.  Certification
here is a dense grid check (default 33 points per axis, ~36k triples),
not a proof: it is the gatekeeper the bound evaluators and the sweep use
for their hypotheses.

Catalog functions carry an analytic second-derivative channel ``d2``; the
bound evaluators read |f''| at interval endpoints from it and never use
finite differences.  ``declared_class`` is a coarse label for f itself
(checked at construction); the bound evaluators certify their own
hypotheses on derived channels such as |f''|^q per call.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, IntegrandError
from .quadrature import Interval

__all__ = [
    "ConvexityClass",
    "TestFunction",
    "Witness",
    "CertificationResult",
    "certify_s_convex",
    "certify_s_concave",
    "builtin_catalog",
    "catalog_names",
    "get_function",
    "s_power",
    "root_power",
    "shifted_square",
    "second_derivative_fd",
]

DEFAULT_GRID_N = 33
DEFAULT_SLACK = 1e-12


@dataclass(frozen=True)
class ConvexityClass:
    """Label: kind in {'convex', 'concave', 's_convex', 's_concave', 'none'};
    the s_* kinds carry the exponent s in (0, 1]."""

    kind: str
    s: float | None = None

    def __post_init__(self):
        if self.kind not in ("convex", "concave", "s_convex", "s_concave", "none"):
            raise DomainError(f"unknown convexity class kind {self.kind!r}")
        if self.kind in ("s_convex", "s_concave"):
            if self.s is None or not (0.0 < self.s <= 1.0):
                raise DomainError(f"{self.kind} requires s in (0, 1], got {self.s}")

    def __str__(self) -> str:
        if self.s is not None:
            return f"{self.kind}({self.s:g})"
        return self.kind


@dataclass(frozen=True)
class TestFunction:
    __test__ = False    # not a pytest collection target

    name: str
    fn: Callable[[float], float]
    d2: Callable[[float], float]
    declared_class: ConvexityClass
    natural_domain: Interval

    def __call__(self, t):
        return self.fn(t)


@dataclass(frozen=True)
class Witness:
    """A violating triple: the convexity inequality fails at (x, y, lam)."""

    x: float
    y: float
    lam: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class CertificationResult:
    passed: bool
    witness: Witness | None
    checked: int

    def __bool__(self) -> bool:
        return self.passed


def _check_s(s: float) -> float:
    s = float(s)
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0, 1], got {s}")
    return s


def _eval_grid(fn, arr: np.ndarray) -> np.ndarray:
    """Evaluate fn over an array, falling back to scalar calls.

    Non-finite results are reported by the caller as IntegrandError, so
    numpy's division/overflow warnings are suppressed here.
    """
    with np.errstate(all="ignore"):
        try:
            out = np.asarray(fn(arr), dtype=float)
            if out.shape == arr.shape:
                return out
        except (TypeError, ValueError, ZeroDivisionError):
            pass
        return np.asarray([fn(float(v)) for v in arr.ravel()],
                          dtype=float).reshape(arr.shape)


def _certify(fn, domain: Interval, s: float, grid_n: int, slack: float,
             concave: bool) -> CertificationResult:
    s = _check_s(s)
    if domain.a < 0.0:
        raise DomainError(
            f"s-convexity is defined on [0, inf); domain starts at {domain.a}")
    grid_n = int(grid_n)
    if grid_n < 3:
        raise DomainError(f"grid_n must be >= 3, got {grid_n}")
    if slack < 0.0:
        raise DomainError(f"slack must be >= 0, got {slack}")

    xs = np.linspace(domain.a, domain.b, grid_n)
    lam = np.linspace(0.0, 1.0, grid_n)
    fx = _eval_grid(fn, xs)
    if not np.all(np.isfinite(fx)):
        bad = xs[~np.isfinite(fx)][0]
        raise IntegrandError(f"function non-finite at grid node t={bad!r}")

    X = xs[:, None, None]
    Y = xs[None, :, None]
    L = lam[None, None, :]
    mix = L * X + (1.0 - L) * Y
    f_mix = _eval_grid(fn, mix)
    if not np.all(np.isfinite(f_mix)):
        raise IntegrandError("function non-finite at an interior grid combination")
    combo = (L ** s) * fx[:, None, None] + ((1.0 - L) ** s) * fx[None, :, None]

    if concave:
        violation = f_mix < combo - slack
    else:
        violation = f_mix > combo + slack

    checked = violation.size
    if not violation.any():
        return CertificationResult(passed=True, witness=None, checked=checked)
    # first violating triple in row-major (x, y, lam) order
    i, j, k = np.unravel_index(int(np.argmax(violation)), violation.shape)
    return CertificationResult(
        passed=False,
        witness=Witness(x=float(xs[i]), y=float(xs[j]), lam=float(lam[k]),
                        lhs=float(f_mix[i, j, k]), rhs=float(combo[i, j, k])),
        checked=checked,
    )


def certify_s_convex(fn, domain: Interval, s: float,
                     grid_n: int = DEFAULT_GRID_N,
                     slack: float = DEFAULT_SLACK) -> CertificationResult:
    """Grid-check s-convexity in the second sense on ``domain`` (a >= 0)."""
    return _certify(fn, domain, s, grid_n, slack, concave=False)


def certify_s_concave(fn, domain: Interval, s: float,
                      grid_n: int = DEFAULT_GRID_N,
                      slack: float = DEFAULT_SLACK) -> CertificationResult:
    """Grid-check s-concavity in the second sense (reversed inequality)."""
    return _certify(fn, domain, s, grid_n, slack, concave=True)


def certify_declared(f: TestFunction, s: float | None = None,
                     grid_n: int = DEFAULT_GRID_N,
                     slack: float = DEFAULT_SLACK) -> CertificationResult:
    """Certify ``f``'s declared class, optionally at an overriding s."""
    cls = f.declared_class
    if cls.kind == "none":
        raise DomainError(f"{f.name} declares no convexity class to certify")
    if s is None:
        s = cls.s if cls.s is not None else 1.0
    if cls.kind in ("convex", "s_convex"):
        return certify_s_convex(f.fn, f.natural_domain, s, grid_n, slack)
    return certify_s_concave(f.fn, f.natural_domain, s, grid_n, slack)


def second_derivative_fd(fn, t: float, h: float = 1e-4) -> float:
    """Central-difference second derivative, used only by consistency tests."""
    return (fn(t + h) - 2.0 * fn(t) + fn(t - h)) / (h * h)


# ---------------------------------------------------------------------------
# catalog

_DOMAIN = Interval(0.0, 4.0)


def _certified(tf: TestFunction) -> TestFunction:
    res = certify_declared(tf)
    if not res.passed:
        raise DomainError(
            f"catalog entry {tf.name} fails its declared class "
            f"{tf.declared_class} at witness {res.witness}")
    return tf


def s_power(s: float, name: str | None = None) -> TestFunction:
    """f(t) = t^(s+2) / ((s+1)(s+2)); second derivative is exactly t^s."""
    s = _check_s(s)
    c = 1.0 / ((s + 1.0) * (s + 2.0))
    return _certified(TestFunction(
        name=name or f"s_power_{s:g}",
        fn=lambda t, s=s, c=c: c * t ** (s + 2.0),
        d2=lambda t, s=s: t ** s,
        declared_class=ConvexityClass("s_convex", s),
        natural_domain=_DOMAIN,
    ))


def root_power(s: float, name: str | None = None) -> TestFunction:
    """f(t) = t^s on [0, 1]; the canonical s-convex power function.

    Its second derivative s(s-1) t^(s-2) blows up at 0 for s < 1, so this
    family is kept out of the finite-difference-checked builtin catalog
    and is meant for the first-order sandwich checks.
    """
    s = _check_s(s)
    return _certified(TestFunction(
        name=name or f"root_power_{s:g}",
        fn=lambda t, s=s: t ** s,
        d2=lambda t, s=s: s * (s - 1.0) * t ** (s - 2.0) if s != 1.0 else 0.0 * t,
        declared_class=ConvexityClass("s_convex", s),
        natural_domain=Interval(0.0, 1.0),
    ))


def shifted_square(a: float, name: str | None = None) -> TestFunction:
    """f(t) = (t - a)^2, the equality witness for intervals starting at a."""
    a = float(a)
    if a < 0.0:
        raise DomainError(f"shift must be >= 0, got {a}")
    return _certified(TestFunction(
        name=name or f"shifted_square_{a:g}",
        fn=lambda t, a=a: (t - a) ** 2,
        d2=lambda t: 2.0 + 0.0 * t,
        declared_class=ConvexityClass("convex"),
        natural_domain=Interval(a, a + 2.0),
    ))


_CATALOG: tuple[TestFunction, ...] | None = None


def builtin_catalog() -> tuple[TestFunction, ...]:
    """The built-in certified catalog (immutable, built once).

    Contains the monomials t^k (k = 2, 3, 4) whose |f''| is convex, the
    s_power family with |f''| = t^s for s in {0.25, 0.5, 0.75} (the s = 0.5
    member has f'' = sqrt(t), so |f''|^q is concave for q <= 2), constants
    and a linear function, and the shifted equality witness (t-1)^2.
    """
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = (
            _certified(TestFunction(
                "const_one", lambda t: 1.0 + 0.0 * t, lambda t: 0.0 * t,
                ConvexityClass("convex"), _DOMAIN)),
            _certified(TestFunction(
                "linear", lambda t: 1.0 * t, lambda t: 0.0 * t,
                ConvexityClass("convex"), _DOMAIN)),
            _certified(TestFunction(
                "square", lambda t: t ** 2, lambda t: 2.0 + 0.0 * t,
                ConvexityClass("convex"), _DOMAIN)),
            _certified(TestFunction(
                "cube", lambda t: t ** 3, lambda t: 6.0 * t,
                ConvexityClass("convex"), _DOMAIN)),
            _certified(TestFunction(
                "quartic", lambda t: t ** 4, lambda t: 12.0 * t ** 2,
                ConvexityClass("convex"), _DOMAIN)),
            s_power(0.25),
            s_power(0.5),
            s_power(0.75),
            shifted_square(1.0),
        )
    return _CATALOG


def catalog_names() -> list[str]:
    return [tf.name for tf in builtin_catalog()]


_PARAM_NAME = re.compile(r"^(s_power|root_power|shifted_square)_([0-9.]+)$")


def get_function(name: str) -> TestFunction:
    """Resolve a catalog entry by name.

    Besides the fixed builtin entries, parameterised names of the forms
    ``s_power_<s>``, ``root_power_<s>`` and ``shifted_square_<a>`` are
    constructed (and certified) on demand.
    """
    for tf in builtin_catalog():
        if tf.name == name:
            return tf
    m = _PARAM_NAME.match(name)
    if m:
        family, value = m.group(1), float(m.group(2))
        if family == "s_power":
            return s_power(value, name=name)
        if family == "root_power":
            return root_power(value, name=name)
        return shifted_square(value, name=name)
    raise DomainError(
        f"unknown function {name!r}; builtin names: {', '.join(catalog_names())}; "
        "parameterised: s_power_<s>, root_power_<s>, shifted_square_<a>")
