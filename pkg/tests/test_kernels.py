"""Exactness and shape checks for the scalar tail/polynomial kernels.

Reference values were produced by two independent routes: the Gaussian
tail integral by adaptive quadrature (scipy.integrate.quad, abs target
1e-15) and the polynomial values by exact rational arithmetic (sympy),
converted to the nearest float.
"""

import math

import numpy as np
import pytest

from excursion.errors import ValidationError
from excursion.kernels import beta_j, gaussian_tail, gaussian_tail_scaled, hermite

# Upper-tail probability at fixed levels, from quadrature of the
# defining integral.  Reported quad error bound was < 5e-14 everywhere.
PSI_ORACLE = {
    -2.0: 0.9772498680518209,
    0.0: 0.5000000000000001,
    1.0: 0.15865525393145707,
    2.0: 0.02275013194817921,
    4.0: 3.1671241833119924e-05,
    8.0: 6.220960562461841e-16,
}

# Probabilists' polynomials evaluated at exact rationals, then rounded.
HERMITE_ORACLE = {
    (0, -3.0): 1.0,
    (0, 0.5): 1.0,
    (0, 7.5): 1.0,
    (1, -3.0): -3.0,
    (1, 2.0): 2.0,
    (2, -3.0): 8.0,
    (2, 0.5): -0.75,
    (3, 0.5): -1.375,
    (3, 7.5): 399.375,
    (5, 2.0): -18.0,
    (5, 7.5): 19624.21875,
    (8, -3.0): -516.0,
    (8, 0.5): 12.69140625,
    (12, -3.0): -67608.0,
    (12, 2.0): 22147.0,
    (12, 7.5): 7070372203.502197,
    (25, 0.5): 965444168249.5637,
    (25, 2.0): -2459906473918.0,
    (64, -3.0): 4.097764625454939e44,
    (64, 7.5): 2.2968531215545894e49,
}


def test_gaussian_tail_matches_quadrature():
    for u, expected in PSI_ORACLE.items():
        assert gaussian_tail(u) == pytest.approx(expected, abs=1e-12)


def test_gaussian_tail_array_matches_scalar():
    u = np.array([-2.0, 0.0, 1.0, 4.0])
    out = gaussian_tail(u)
    assert out.shape == u.shape
    for i, v in enumerate(u):
        assert out[i] == gaussian_tail(float(v))


def test_hermite_against_exact_values():
    for (j, x), expected in HERMITE_ORACLE.items():
        assert hermite(j, x) == pytest.approx(expected, rel=1e-12)


def test_hermite_recurrence():
    x = np.linspace(-5.0, 5.0, 101)
    for j in range(1, 13):
        lhs = hermite(j + 1, x)
        rhs = x * hermite(j, x) - j * hermite(j - 1, x)
        scale = np.maximum(np.abs(lhs), 1.0)
        assert np.all(np.abs(lhs - rhs) <= 1e-9 * scale)


def test_hermite_parity():
    x = np.linspace(-5.0, 5.0, 41)
    for j in range(0, 13):
        assert np.allclose(hermite(j, -x), (-1.0) ** j * hermite(j, x), rtol=1e-12)


def test_hermite_degree_cap():
    assert math.isfinite(hermite(64, 1.7))
    with pytest.raises(ValidationError):
        hermite(65, 0.0)
    with pytest.raises(ValidationError):
        hermite(-1, 0.0)


def test_gaussian_tail_strictly_decreasing():
    u = np.linspace(-6.0, 6.0, 121)
    vals = gaussian_tail(u)
    assert np.all(np.diff(vals) < 0)


def test_gaussian_tail_derivative():
    # dPsi/du = -phi(u); central differences at step 2e-4 leave
    # truncation ~ h^2 (u^2 - 1) / 6 well under the 1e-6 target.
    h = 2e-4
    for u in np.linspace(-3.0, 5.0, 33):
        num = (gaussian_tail(u + h) - gaussian_tail(u - h)) / (2.0 * h)
        exact = -math.exp(-u * u / 2.0) / math.sqrt(2.0 * math.pi)
        assert num == pytest.approx(exact, rel=1e-6)


def test_gaussian_tail_scaled_far_tail():
    # exp(u^2/2) * Psi(u) stays representable where Psi itself underflows
    u = 40.0
    assert gaussian_tail(u) == 0.0
    mills = math.sqrt(2.0 * math.pi) * u * gaussian_tail_scaled(u)
    assert 0.999 < mills < 1.0


def test_gaussian_tail_scaled_consistent_at_moderate_levels():
    for u in (0.0, 1.0, 3.0, 5.0):
        assert gaussian_tail_scaled(u) == pytest.approx(
            math.exp(u * u / 2.0) * gaussian_tail(u), rel=1e-13
        )


def test_beta_zero_is_the_tail():
    for u in (-1.0, 0.5, 3.0):
        assert beta_j(0, u) == gaussian_tail(u)


def test_beta_frozen_values():
    assert beta_j(2, 3.0) == pytest.approx(0.0021160517453817007, rel=1e-13)
    assert beta_j(1, 0.0) == pytest.approx(0.15915494309189535, rel=1e-13)


def test_beta_positive_beyond_polynomial_roots():
    # The top Hermite root for H_{j-1} sits below 2*sqrt(j) on this
    # range (checked against Gauss-Hermite nodes), so the density factor
    # controls the sign from there on.
    for j in range(1, 13):
        for u in np.linspace(2.0 * math.sqrt(j) + 1e-9, 9.0, 7):
            assert beta_j(j, u) > 0.0


def test_beta_matches_definition():
    for j in (1, 2, 3, 6):
        for u in (-1.0, 0.7, 2.5):
            expected = (
                (2.0 * math.pi) ** (-(j + 1) / 2.0)
                * hermite(j - 1, u)
                * math.exp(-u * u / 2.0)
            )
            assert beta_j(j, u) == pytest.approx(expected, rel=1e-13)
