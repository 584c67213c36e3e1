"""Factorization ladder and replication-stream behaviour."""

import numpy as np
import pytest

from excursion.errors import FactorizationError, ValidationError
from excursion.sampling import BATCH, draw_in_batches, factor_covariance, replicate_generator


def spd_matrix(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return a @ a.T + n * np.eye(n)


def test_factor_reconstructs_spd():
    mat = spd_matrix(6, 0)
    factor, shift = factor_covariance(mat)
    assert shift == 0.0
    assert np.allclose(factor, np.tril(factor))
    assert factor @ factor.T == pytest.approx(mat, rel=1e-10)


def test_factor_singular_needs_small_shift():
    # Rank-one covariance: exact Cholesky fails, the ladder succeeds
    # with a diagonal inflation far below the cap.
    mat = np.ones((5, 5))
    factor, shift = factor_covariance(mat)
    assert 0.0 < shift <= 1e-6 * 1.0
    assert factor @ factor.T == pytest.approx(mat + shift * np.eye(5), rel=1e-9)


def test_factor_indefinite_reports_spectrum():
    mat = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(FactorizationError, match="smallest eigenvalue"):
        factor_covariance(mat)


def test_factor_fixed_jitter_path():
    mat = spd_matrix(4, 1)
    scale = float(np.trace(mat)) / 4
    factor, shift = factor_covariance(mat, fixed_rel_jitter=1e-10)
    assert shift == pytest.approx(1e-10 * scale, rel=1e-12)
    assert factor @ factor.T == pytest.approx(mat + shift * np.eye(4), rel=1e-9)
    with pytest.raises(FactorizationError, match="requested diagonal shift"):
        factor_covariance(np.array([[1.0, 2.0], [2.0, 1.0]]), fixed_rel_jitter=1e-10)


def test_factor_validation():
    with pytest.raises(ValidationError):
        factor_covariance(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        factor_covariance(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValidationError):
        factor_covariance(np.zeros((3, 3)))
    with pytest.raises(ValidationError):
        factor_covariance(spd_matrix(3, 2), fixed_rel_jitter=-1e-9)


def test_replicate_streams_deterministic_and_distinct():
    a = replicate_generator(7, 3).standard_normal(4)
    b = replicate_generator(7, 3).standard_normal(4)
    assert np.array_equal(a, b)
    c = replicate_generator(7, 4).standard_normal(4)
    assert not np.array_equal(a, c)
    d = replicate_generator(8, 3).standard_normal(4)
    assert not np.array_equal(a, d)


def test_replicate_streams_not_aliased_across_seeds():
    # Key mixing must keep the stream FAMILIES of nearby seeds disjoint,
    # not only individual streams: an XOR-mixed key makes {s ^ i} the
    # same set for neighbouring s, which permutes replications and
    # leaves every permutation-invariant statistic identical.
    first = {replicate_generator(17, i).standard_normal() for i in range(32)}
    other = {replicate_generator(18, i).standard_normal() for i in range(32)}
    assert not first & other
    swapped_a = replicate_generator(17, 18).standard_normal()
    swapped_b = replicate_generator(18, 17).standard_normal()
    assert swapped_a != swapped_b


def test_replicate_generator_validation():
    with pytest.raises(ValidationError):
        replicate_generator(1.5, 0)
    with pytest.raises(ValidationError):
        replicate_generator(True, 0)
    with pytest.raises(ValidationError):
        replicate_generator(-1, 0)
    with pytest.raises(ValidationError):
        replicate_generator(2**64, 0)
    with pytest.raises(ValidationError):
        replicate_generator(0, -1)
    with pytest.raises(ValidationError):
        replicate_generator(0, 2**64)


def collect(factor, reps, seed):
    cols = []
    starts = []
    for start, block in draw_in_batches(factor, reps, seed):
        starts.append(start)
        cols.append(block)
    return starts, np.hstack(cols)


def test_draws_partition_in_fixed_batches():
    factor, _ = factor_covariance(spd_matrix(3, 4))
    starts, samples = collect(factor, 1030, 11)
    assert starts == [0, BATCH, 2 * BATCH]
    assert samples.shape == (3, 1030)


def test_draws_extend_as_a_prefix():
    # Growing the replication budget must leave earlier replications
    # untouched: per-replication streams, not one shared stream.
    factor, _ = factor_covariance(spd_matrix(3, 4))
    _, short = collect(factor, 700, 11)
    _, long = collect(factor, 1030, 11)
    assert np.array_equal(short, long[:, :700])


def test_draws_deterministic():
    factor, _ = factor_covariance(spd_matrix(2, 5))
    _, a = collect(factor, 600, 2)
    _, b = collect(factor, 600, 2)
    assert np.array_equal(a, b)


def test_draws_validation():
    factor, _ = factor_covariance(spd_matrix(2, 5))
    with pytest.raises(ValidationError):
        list(draw_in_batches(factor, 0, 1))
    with pytest.raises(ValidationError):
        list(draw_in_batches(factor, 2.5, 1))


def test_draws_have_target_covariance():
    mat = spd_matrix(3, 8)
    factor, _ = factor_covariance(mat)
    _, samples = collect(factor, 4000, 13)
    sample_cov = np.cov(samples)
    # 4000 draws pin a 3x3 covariance to a few percent.
    assert sample_cov == pytest.approx(mat, rel=0.15, abs=0.3)
