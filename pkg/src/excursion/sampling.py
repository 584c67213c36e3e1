"""Exact joint Gaussian sampling support.

Two pieces shared by the simulation layers:

* ``factor_covariance``: lower-triangular factorization of a covariance
  matrix, with a bounded diagonal-inflation retry for matrices that are
  singular or indefinite only at rounding level.  The inflation is
  relative to the mean diagonal, doubling from 1e-12 up to a hard cap
  of 1e-6; a matrix that cannot be factored within the cap raises
  FactorizationError (its smallest eigenvalue goes in the message, so a
  genuinely indefinite kernel is distinguishable from conditioning).

* counter-based generators: replication i draws from a Philox stream
  whose 128-bit key is the seed in the high word and i in the low word,
  so streams are distinct across both seeds and replications,
  reproducible, order independent, and parallelizable, and a run with
  more replications extends a shorter run instead of reshuffling it.  For the same reason
  a sample on a grid that extends another grid (extra points appended)
  restricts exactly to the sample on the smaller grid: both the
  factorization and the draws depend only on leading blocks.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import FactorizationError, ValidationError

__all__ = ["factor_covariance", "replicate_generator", "draw_in_batches", "BATCH"]

# Replications per matrix-product block.  Fixed: results must not
# depend on how the replicate loop is carved up.
BATCH = 512

_BASE_REL_JITTER = 1e-12
_MAX_REL_JITTER = 1e-6


def factor_covariance(
    matrix: np.ndarray, *, fixed_rel_jitter: float | None = None
) -> tuple[np.ndarray, float]:
    """Lower Cholesky factor of a covariance matrix.

    Returns (L, shift) with L lower triangular such that
    L @ L.T = matrix + shift * I; shift is 0.0 when no inflation was
    needed.  ``fixed_rel_jitter`` bypasses the ladder and applies
    exactly that relative shift (tests that compare runs across grids
    use it to keep the factorizations structurally identical).
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"covariance must be a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValidationError("covariance entries must be finite")
    n = matrix.shape[0]
    scale = float(np.trace(matrix)) / n
    if not scale > 0:
        raise ValidationError(f"covariance diagonal must be positive on average, got {scale}")

    eye = np.eye(n)
    if fixed_rel_jitter is not None:
        shift = float(fixed_rel_jitter) * scale
        if not (math.isfinite(shift) and shift >= 0):
            raise ValidationError(f"fixed jitter must be nonnegative, got {fixed_rel_jitter}")
        try:
            return np.linalg.cholesky(matrix + shift * eye), shift
        except np.linalg.LinAlgError:
            raise FactorizationError(
                f"factorization failed at the requested diagonal shift {shift:.3e}"
            ) from None

    try:
        return np.linalg.cholesky(matrix), 0.0
    except np.linalg.LinAlgError:
        pass

    # Positive definiteness of matrix + eps*I is monotone in eps, so if
    # the cap fails every smaller step fails too: diagnose and abort
    # without walking the ladder.
    cap = _MAX_REL_JITTER * scale
    try:
        at_cap = np.linalg.cholesky(matrix + cap * eye)
    except np.linalg.LinAlgError:
        min_eig = float(np.linalg.eigvalsh(matrix)[0])
        raise FactorizationError(
            "covariance is not positive semidefinite within the jitter budget: "
            f"smallest eigenvalue {min_eig:.6e}, largest allowed diagonal shift {cap:.3e}"
        ) from None

    shift = _BASE_REL_JITTER * scale
    while shift < cap:
        try:
            return np.linalg.cholesky(matrix + shift * eye), shift
        except np.linalg.LinAlgError:
            shift *= 2.0
    return at_cap, cap


def replicate_generator(seed: int, index: int) -> np.random.Generator:
    """The dedicated stream for replication ``index`` under ``seed``."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < 2**64:
        raise ValidationError(f"seed must fit in 64 bits, got {seed}")
    if not isinstance(index, (int, np.integer)) or not 0 <= index < 2**64:
        raise ValidationError(f"replication index must fit in 64 bits, got {index!r}")
    # Disjoint key ranges per seed; XOR-style mixing would alias nearby
    # seeds onto the same stream set.
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(index)))


def draw_in_batches(factor: np.ndarray, reps: int, seed: int):
    """Yield blocks of exact joint draws as (first_index, samples).

    ``samples`` has one column per replication: column j of a block
    starting at i is L z with z standard normal from the stream of
    replication i + j.  Block size is fixed at BATCH so the partition
    never influences the values.
    """
    if not isinstance(reps, (int, np.integer)) or reps < 1:
        raise ValidationError(f"replication count must be a positive integer, got {reps!r}")
    n = factor.shape[0]
    for start in range(0, int(reps), BATCH):
        width = min(BATCH, int(reps) - start)
        z = np.empty((n, width))
        for j in range(width):
            z[:, j] = replicate_generator(seed, start + j).standard_normal(n)
        yield start, factor @ z
