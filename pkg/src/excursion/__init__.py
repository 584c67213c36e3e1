"""Tail probability approximations for Gaussian random fields on
Euclidean boxes, flat tori, and spheres, validated by brute-force
Monte Carlo simulation.

Submodule map:

* ``kernels``        Hermite polynomials, Gaussian tail, level kernels
* ``manifolds``      charts, metrics, geodesic and chordal distances
* ``covariance``     smooth isotropic and locally isotropic families
* ``curvatures``     intrinsic-volume catalogue and Steiner polynomial
* ``approximations`` Euler-characteristic and fractional-index formulas
* ``pickands``       Monte Carlo estimation of the constant H_{alpha,N}
* ``sampling``       covariance factorization and replication streams
* ``validation``     field simulation, empirical excursion, comparison
* ``cli``            the ``excursion`` command

Attribute access is lazy (PEP 562): importing the package does not load
numpy, so the CLI can pin thread counts before the numeric stack comes
up.
"""

from __future__ import annotations

import importlib

__version__ = "0.1.0"

_EXPORTS = {
    "hermite": "kernels",
    "gaussian_tail": "kernels",
    "gaussian_tail_scaled": "kernels",
    "beta_j": "kernels",
    "ChartPoint": "manifolds",
    "Euclidean": "manifolds",
    "FlatTorus": "manifolds",
    "Sphere": "manifolds",
    "SmoothIsotropicModel": "covariance",
    "SquaredExponential": "covariance",
    "SphereSchoenberg": "covariance",
    "LocallyIsotropicModel": "covariance",
    "PoweredExponential": "covariance",
    "StableOnChart": "covariance",
    "Rectangle": "curvatures",
    "Ball": "curvatures",
    "FullSphere": "curvatures",
    "FullTorus": "curvatures",
    "GreatCircle": "curvatures",
    "lk_curvatures": "curvatures",
    "rescale_lk": "curvatures",
    "tube_volume": "curvatures",
    "ApproxResult": "approximations",
    "eec_approx": "approximations",
    "pickands_approx": "approximations",
    "pickands_approx_submanifold": "approximations",
    "euclidean_det_integral": "approximations",
    "PickandsEstimate": "pickands",
    "estimate_pickands": "pickands",
    "simulate_z": "pickands",
    "resolve_constant": "pickands",
    "McEstimate": "validation",
    "build_grid": "validation",
    "sample_field": "validation",
    "empirical_excursion": "validation",
    "compare_report": "validation",
    "ExcursionError": "errors",
    "ValidationError": "errors",
    "ConfigError": "errors",
    "FactorizationError": "errors",
}

__all__ = ["__version__", *sorted(_EXPORTS)]


def __getattr__(name: str):
    try:
        module_name = _EXPORTS[name]
    except KeyError:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}") from None
    module = importlib.import_module(f".{module_name}", __name__)
    value = getattr(module, name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals()) | set(_EXPORTS))
