"""Scalar kernels shared by every excursion-probability formula.

Conventions used throughout:

* Hermite polynomials are the probabilists' family,
  H_j(x) = (-1)^j e^{x^2/2} (d^j/dx^j) e^{-x^2/2},
  generated by the recurrence H_{j+1}(x) = x H_j(x) - j H_{j-1}(x) with
  H_0 = 1 and H_1 = x.  (Not the physicists' convention.)
* Psi(u) is the standard normal upper tail P{N(0,1) >= u}.
* The level kernels are

      beta_0(u) = Psi(u)
      beta_j(u) = (2 pi)^{-(j+1)/2} H_{j-1}(u) e^{-u^2/2}     for j >= 1.

All three are exact evaluations (no quadrature): Psi goes through the
complementary error function, which has no cancellation in the tail.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import ValidationError

__all__ = ["hermite", "gaussian_tail", "gaussian_tail_scaled", "beta_j"]


def hermite(j: int, x):
    """Evaluate the probabilists' Hermite polynomial H_j at x.

    x may be a scalar or an ndarray; the return type follows the input.
    The three-term recurrence is numerically stable for the small
    degrees (j <= a few dozen) used here.
    """
    if not isinstance(j, (int, np.integer)) or isinstance(j, bool):
        raise ValidationError(f"hermite degree must be an integer, got {j!r}")
    if j < 0:
        raise ValidationError(f"hermite degree must be >= 0, got {j}")
    if j > 64:
        # The expansions here never need more than the domain dimension;
        # the cap keeps the recurrence in a well-conditioned regime.
        raise ValidationError(f"hermite degree capped at 64, got {j}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValidationError("hermite argument must be finite")
    h_prev = np.ones_like(x)
    if j == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = x.copy()
    for degree in range(1, j):
        h, h_prev = x * h - degree * h_prev, h
    return h if h.ndim else float(h)


def gaussian_tail(u):
    """Standard normal upper tail Psi(u) = P{N(0,1) >= u}.

    Computed as erfc(u / sqrt(2)) / 2, accurate to full double precision
    for every representable u (the tail underflows to 0 near u ~ 38.5).
    """
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ValidationError("gaussian_tail argument must be finite")
    out = 0.5 * special.erfc(u / math.sqrt(2.0))
    return out if out.ndim else float(out)


def gaussian_tail_scaled(u):
    """Exponentially scaled tail, e^{u^2/2} * Psi(u).

    Stays representable far beyond the underflow point of Psi itself;
    used for Mills-ratio checks and leading-order tail algebra at large u.
    """
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ValidationError("gaussian_tail_scaled argument must be finite")
    out = 0.5 * special.erfcx(u / math.sqrt(2.0))
    return out if out.ndim else float(out)


def beta_j(j: int, u):
    """Level kernel beta_j(u) of the Euler-characteristic expansion.

    beta_0 is the Gaussian tail; for j >= 1,
    beta_j(u) = (2 pi)^{-(j+1)/2} H_{j-1}(u) e^{-u^2/2}.
    """
    if not isinstance(j, (int, np.integer)) or isinstance(j, bool):
        raise ValidationError(f"beta_j index must be an integer, got {j!r}")
    if j < 0:
        raise ValidationError(f"beta_j index must be >= 0, got {j}")
    if j == 0:
        return gaussian_tail(u)
    u_arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u_arr)):
        raise ValidationError("beta_j argument must be finite")
    scale = (2.0 * math.pi) ** (-(j + 1) / 2.0)
    out = scale * np.asarray(hermite(j - 1, u_arr)) * np.exp(-0.5 * u_arr**2)
    return out if out.ndim else float(out)
