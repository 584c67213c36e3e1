"""Covariance families on the catalogue manifolds.

Two kinds of model:

* smooth isotropic: C(p, q) = rho(d_M(p, q)^2) with rho smooth at 0,
  unit variance rho(0) = 1, and the curvature parameter rho'(0) < 0
  exposed exactly;
* locally isotropic: 1 - C(p, q) = c * d_M(p, q)^alpha * (1 + o(1))
  near the diagonal, for c > 0 and alpha in (0, 2], exposing (c, alpha).

A locally isotropic model may carry a full covariance so it can be
simulated; the bare parameter pair is enough for the fractional-index
tail approximation.

Construction checks parameter domains only.  Whether a family is in
fact positive semidefinite on its manifold is a property of the pair
(family, manifold); combinations that are not are still constructible
here and fail later, at factorization time, when a simulation is
requested.  The sphere restriction alpha <= 1 for the geodesic
powered-exponential family is enforced at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModelError, ValidationError
from .manifolds import ChartPoint, Sphere, _ManifoldBase

__all__ = [
    "SmoothIsotropicModel",
    "SquaredExponential",
    "SphereSchoenberg",
    "LocallyIsotropicModel",
    "PoweredExponential",
    "StableOnChart",
    "covariance",
    "rho_prime_0",
    "local_expansion",
    "expansion_ratio_check",
]

# Coefficient sums are checked against exact targets with this slack.
_SUM_TOL = 1e-12


class _ModelBase:
    """Shared evaluation plumbing; concrete families fill in the kernel."""

    manifold: _ManifoldBase

    def _distance_matrix(self, chart: str, coords: np.ndarray) -> np.ndarray:
        return self.manifold.pairwise_geodesic(chart, coords, coords)

    def _scalar_distance(self, p: ChartPoint, q: ChartPoint) -> float:
        return self.manifold.geodesic_distance(p, q)

    def correlation_from_distance(self, d):
        """Correlation as a function of separation distance (vectorized)."""
        raise NotImplementedError

    def covariance(self, p: ChartPoint, q: ChartPoint) -> float:
        """C(p, q); symmetric in its arguments to the last bit."""
        self.manifold.validate_point(p)
        self.manifold.validate_point(q)
        return float(self.correlation_from_distance(self._scalar_distance(p, q)))

    def covariance_matrix(self, chart: str, coords: np.ndarray) -> np.ndarray:
        """Dense covariance matrix for an (n, dim) coordinate array."""
        coords = np.asarray(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != self.manifold.dim:
            raise ValidationError(
                f"expected an (n, {self.manifold.dim}) coordinate array, got shape {coords.shape}"
            )
        mat = np.asarray(self.correlation_from_distance(self._distance_matrix(chart, coords)))
        # Symmetrize and pin the diagonal: pairwise distance kernels are
        # symmetric only up to rounding.
        mat = 0.5 * (mat + mat.T)
        np.fill_diagonal(mat, 1.0)
        return mat


class SmoothIsotropicModel(_ModelBase):
    """Base for unit-variance models of the form C = rho(d^2), rho smooth."""

    def rho_prime_0(self) -> float:
        """d rho / d(d^2) at zero separation; negative for any real field."""
        raise NotImplementedError

    def second_spectral_moment(self) -> float:
        """-2 rho'(0), the variance of each orthonormal derivative."""
        return -2.0 * self.rho_prime_0()

    def local_model(self) -> "LocallyIsotropicModel":
        """The near-diagonal reading of this model: alpha = 2, c = -rho'(0)."""
        return LocallyIsotropicModel(
            c=-self.rho_prime_0(), alpha=2.0, manifold=self.manifold, full_model=self
        )


@dataclass(frozen=True)
class SquaredExponential(SmoothIsotropicModel):
    """C(p, q) = exp(-d_M(p, q)^2 / (2 l^2))."""

    manifold: _ManifoldBase
    length_scale: float

    def __post_init__(self):
        ell = float(self.length_scale)
        if not (math.isfinite(ell) and ell > 0):
            raise ValidationError(f"length scale must be positive, got {self.length_scale}")
        object.__setattr__(self, "length_scale", ell)

    def correlation_from_distance(self, d):
        d = np.asarray(d, dtype=float)
        return np.exp(-(d**2) / (2.0 * self.length_scale**2))

    def rho_prime_0(self) -> float:
        return -1.0 / (2.0 * self.length_scale**2)


@dataclass(frozen=True)
class SphereSchoenberg(SmoothIsotropicModel):
    """C(p, q) = sum_n b_n t^n with t the unit-sphere inner product.

    Equivalently sum_n b_n cos^n(d / r).  Coefficients must be
    nonnegative with sum exactly 1 (unit variance is rejected, not
    repaired), and some n >= 1 coefficient must be positive, else the
    field is constant.
    """

    manifold: Sphere
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.manifold, Sphere):
            raise ValidationError("SphereSchoenberg is defined on spheres only")
        coeffs = tuple(float(b) for b in self.coefficients)
        if len(coeffs) == 0:
            raise ValidationError("SphereSchoenberg needs at least one coefficient")
        if not all(math.isfinite(b) and b >= 0 for b in coeffs):
            raise ValidationError(f"coefficients must be nonnegative, got {coeffs}")
        total = math.fsum(coeffs)
        if abs(total - 1.0) > _SUM_TOL:
            raise ValidationError(
                f"coefficients must sum to 1 for unit variance, got {total!r}"
            )
        if math.fsum(n * b for n, b in enumerate(coeffs)) <= 0.0:
            raise DegenerateModelError(
                "only the constant term is present; the field would be degenerate"
            )
        object.__setattr__(self, "coefficients", coeffs)

    def _poly(self, t):
        return np.polynomial.polynomial.polyval(t, np.asarray(self.coefficients))

    def correlation_from_distance(self, d):
        d = np.asarray(d, dtype=float)
        return self._poly(np.cos(d / self.manifold.radius))

    def covariance(self, p: ChartPoint, q: ChartPoint) -> float:
        # Evaluate through the inner product directly: cheaper than going
        # distance -> cos(distance), and exact where the remark form is.
        self.manifold.validate_point(p)
        self.manifold.validate_point(q)
        u = self.manifold._unit_embed_coords(p.chart, p.array)[0]
        v = self.manifold._unit_embed_coords(q.chart, q.array)[0]
        t = min(1.0, max(-1.0, float(u @ v)))
        return float(self._poly(t))

    def covariance_matrix(self, chart: str, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != self.manifold.dim:
            raise ValidationError(
                f"expected an (n, {self.manifold.dim}) coordinate array, got shape {coords.shape}"
            )
        u = self.manifold._unit_embed_coords(chart, coords)
        t = np.clip(u @ u.T, -1.0, 1.0)
        mat = np.asarray(self._poly(t))
        mat = 0.5 * (mat + mat.T)
        np.fill_diagonal(mat, 1.0)
        return mat

    def rho_prime_0(self) -> float:
        # rho(s) = sum b_n cos^n(sqrt(s)/r); each cos^n term contributes
        # -n/(2 r^2) at s = 0.
        weighted = math.fsum(n * b for n, b in enumerate(self.coefficients))
        return -weighted / (2.0 * self.manifold.radius**2)


@dataclass(frozen=True)
class LocallyIsotropicModel(_ModelBase):
    """Near-diagonal behaviour 1 - C = c d^alpha (1 + o(1)).

    ``full_model`` optionally attaches a complete covariance whose local
    expansion matches (c, alpha); without one the model supports the
    tail approximation but cannot be evaluated or simulated.
    """

    c: float
    alpha: float
    manifold: _ManifoldBase
    full_model: _ModelBase | None = field(default=None, compare=False)

    def __post_init__(self):
        c = float(self.c)
        alpha = float(self.alpha)
        if not (math.isfinite(c) and c > 0):
            raise ValidationError(f"local expansion coefficient must be positive, got {self.c}")
        if not (math.isfinite(alpha) and 0.0 < alpha <= 2.0):
            raise ValidationError(f"local expansion exponent must lie in (0, 2], got {self.alpha}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "alpha", alpha)

    def local_expansion(self) -> tuple[float, float]:
        return (self.c, self.alpha)

    def _evaluable(self) -> _ModelBase:
        if self.full_model is None:
            raise ValidationError(
                "model carries only the local expansion (c, alpha); attach a full "
                "covariance family to evaluate or simulate it"
            )
        return self.full_model

    # Subclasses with their own kernel set full_model to themselves;
    # the guards below keep that from looping back here.

    def correlation_from_distance(self, d):
        target = self._evaluable()
        if target is self:
            raise NotImplementedError
        return target.correlation_from_distance(d)

    def covariance(self, p: ChartPoint, q: ChartPoint) -> float:
        target = self._evaluable()
        if target is self:
            return _ModelBase.covariance(self, p, q)
        return target.covariance(p, q)

    def covariance_matrix(self, chart: str, coords: np.ndarray) -> np.ndarray:
        target = self._evaluable()
        if target is self:
            return _ModelBase.covariance_matrix(self, chart, coords)
        return target.covariance_matrix(chart, coords)


def _check_fractional_params(c, alpha) -> tuple[float, float]:
    c = float(c)
    alpha = float(alpha)
    if not (math.isfinite(c) and c > 0):
        raise ValidationError(f"coefficient c must be positive, got {c}")
    if not (math.isfinite(alpha) and 0.0 < alpha <= 2.0):
        raise ValidationError(f"exponent alpha must lie in (0, 2], got {alpha}")
    return c, alpha


class PoweredExponential(LocallyIsotropicModel):
    """C(p, q) = exp(-c d_M(p, q)^alpha) in geodesic distance.

    On spheres only alpha <= 1 is accepted; larger exponents do not give
    a positive semidefinite kernel there.
    """

    def __init__(self, manifold: _ManifoldBase, c: float, alpha: float):
        c, alpha = _check_fractional_params(c, alpha)
        if isinstance(manifold, Sphere) and alpha > 1.0:
            raise ValidationError(
                f"geodesic powered-exponential on a sphere needs alpha <= 1, got {alpha}"
            )
        super().__init__(c=c, alpha=alpha, manifold=manifold, full_model=self)

    def correlation_from_distance(self, d):
        d = np.asarray(d, dtype=float)
        return np.exp(-self.c * d**self.alpha)


class StableOnChart(LocallyIsotropicModel):
    """C(p, q) = exp(-c |e(p) - e(q)|^alpha) for an isometric-at-the-
    diagonal flat embedding e of the manifold.

    The embedded distance matches geodesic distance to second order, so
    the local expansion is the same (c, alpha); unlike the geodesic
    form, this kernel is positive definite for all alpha in (0, 2] on
    every catalogue manifold.
    """

    def __init__(self, manifold: _ManifoldBase, c: float, alpha: float):
        c, alpha = _check_fractional_params(c, alpha)
        super().__init__(c=c, alpha=alpha, manifold=manifold, full_model=self)

    def _distance_matrix(self, chart: str, coords: np.ndarray) -> np.ndarray:
        return self.manifold.pairwise_chordal(chart, coords, coords)

    def _scalar_distance(self, p: ChartPoint, q: ChartPoint) -> float:
        return self.manifold.chordal_distance(p, q)

    def correlation_from_distance(self, d):
        d = np.asarray(d, dtype=float)
        return np.exp(-self.c * d**self.alpha)


def covariance(model: _ModelBase, p: ChartPoint, q: ChartPoint) -> float:
    """C(p, q) under the given model."""
    return model.covariance(p, q)


def rho_prime_0(model: SmoothIsotropicModel) -> float:
    """rho'(0) of a smooth isotropic model (exact, from the parameters)."""
    return model.rho_prime_0()


def local_expansion(model) -> tuple[float, float]:
    """The (c, alpha) pair of a model's near-diagonal expansion."""
    if isinstance(model, LocallyIsotropicModel):
        return model.local_expansion()
    if isinstance(model, SmoothIsotropicModel):
        return model.local_model().local_expansion()
    raise ValidationError(f"no local expansion defined for {type(model).__name__}")


def expansion_ratio_check(model, p: ChartPoint, q_sequence) -> list[float]:
    """(1 - C(p, q)) / (c d^alpha) for each q; tends to 1 as q -> p.

    Requires an evaluable covariance; raises on any zero-distance pair.
    """
    c, alpha = local_expansion(model)
    out = []
    for q in q_sequence:
        d = model.manifold.geodesic_distance(p, q)
        if d == 0.0:
            raise ValidationError("expansion ratio undefined at zero separation")
        out.append((1.0 - model.covariance(p, q)) / (c * d**alpha))
    return out
