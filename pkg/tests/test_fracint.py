"""Riemann-Liouville operators: closed forms, reductions, symmetry."""

import pytest

from fracineq import DomainError, Interval, gamma, integrate, left_rl, right_rl
from fracineq.funclib import builtin_catalog

# J_{0+}^{1/2} 1 (1) = 1/Gamma(1.5); frozen from the closed form
# x^alpha / Gamma(alpha+1), cross-checked by singular quadrature
INV_GAMMA_15 = 1.1283791670955126


def test_alpha_one_is_classical_integral():
    assert left_rl(lambda t: t, 1.0, 0.0, 1.0) == pytest.approx(0.5, abs=1e-10)
    assert right_rl(lambda t: t, 1.0, 1.0, 0.0) == pytest.approx(0.5, abs=1e-10)


def test_constant_half_order():
    assert left_rl(lambda t: 1.0, 0.5, 0.0, 1.0) == pytest.approx(
        INV_GAMMA_15, abs=1e-10)
    assert right_rl(lambda t: 1.0, 0.5, 1.0, 0.0) == pytest.approx(
        INV_GAMMA_15, abs=1e-10)


def test_zero_integrand():
    for alpha in (0.25, 1.0, 2.5):
        assert left_rl(lambda t: 0.0, alpha, 0.0, 1.0) == 0.0


def test_reflection_symmetry():
    # J_{b-}^alpha f(a) = J_{a+}^alpha f(a+b-.) (b), here with f = 1 - t
    lhs = right_rl(lambda t: 1.0 - t, 0.5, 1.0, 0.0)
    rhs = left_rl(lambda t: t, 0.5, 0.0, 1.0)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1.5, 2.5])
@pytest.mark.parametrize("beta_exp", [0, 1, 2, 3])
def test_monomial_closed_form(alpha, beta_exp):
    # J_{a+}^alpha (t-a)^m (x) = Gamma(m+1)/Gamma(m+alpha+1) (x-a)^(alpha+m)
    a, x = 0.5, 2.0
    got = left_rl(lambda t: (t - a) ** beta_exp, alpha, a, x, abs_tol=1e-11)
    expected = (gamma(beta_exp + 1.0) / gamma(beta_exp + alpha + 1.0)
                * (x - a) ** (alpha + beta_exp))
    assert got == pytest.approx(expected, rel=1e-8)


def test_alpha_one_reduction_on_catalog_samples():
    iv = Interval(0.0, 2.0)
    for f in builtin_catalog()[:4]:
        direct = integrate(f.fn, iv, 1e-11).value
        assert left_rl(f, 1.0, iv.a, iv.b) == pytest.approx(direct, abs=1e-9)


def test_linearity_in_f():
    f = lambda t: t ** 2
    g = lambda t: 3.0 * t + 1.0
    combo = lambda t: 2.0 * f(t) + g(t)
    alpha = 0.75
    lhs = left_rl(combo, alpha, 0.0, 1.5)
    rhs = 2.0 * left_rl(f, alpha, 0.0, 1.5) + left_rl(g, alpha, 0.0, 1.5)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_positivity():
    # positive integrand, positive kernel, positive weights
    assert left_rl(lambda t: t ** 2 + 0.1, 0.5, 0.0, 1.0) >= 0.0
    assert right_rl(lambda t: t ** 2 + 0.1, 0.3, 1.0, 0.0) >= 0.0


def test_domain_errors():
    with pytest.raises(DomainError):
        left_rl(lambda t: t, 1.0, 1.0, 1.0)     # x == a
    with pytest.raises(DomainError):
        left_rl(lambda t: t, 1.0, 2.0, 1.0)     # x < a
    with pytest.raises(DomainError):
        right_rl(lambda t: t, 1.0, 0.0, 0.0)    # x == b
    with pytest.raises(DomainError):
        left_rl(lambda t: t, 0.0, 0.0, 1.0)     # alpha = 0 not an order value
    with pytest.raises(DomainError):
        left_rl(lambda t: t, -0.5, 0.0, 1.0)


def test_accepts_test_function_objects():
    sq = builtin_catalog()[2]
    assert sq.name == "square"
    assert left_rl(sq, 1.0, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-10)
