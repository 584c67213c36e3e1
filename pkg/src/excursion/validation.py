"""Brute-force Monte Carlo check of the analytic approximations.

The oracle is direct: simulate the Gaussian field itself on a dense
grid over the domain, count how often the grid maximum exceeds each
level, and put a Wilson interval around the count.  A grid maximum can
only under-shoot the continuum supremum, so the empirical curve bounds
the target from below; the drift under grid refinement is reported (a
second run at half resolution) rather than corrected.

Grids:

* rectangles: inclusive tensor grid, ``resolution`` points per axis;
* flat tori: tensor grid with pitch period/resolution (no duplicate
  seam points);
* 2-sphere: latitude rows at the midpoints (i + 1/2) pi/resolution,
  each row carrying about 2 resolution sin(theta) longitudes, so the
  pitch is roughly uniform and the poles are never touched;
* circles and great circles: equally spaced angles.

``Grid.refine`` returns a grid that contains the parent's points as an
exact prefix (same floating-point values, same order) followed by the
new points.  Combined with replication-keyed draws, a refined run
restricts to the coarse run sample for sample: that is what makes
"finer grid never lowers the empirical curve" a testable invariant
rather than a statistical accident.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curvatures import Ball, FullSphere, FullTorus, GreatCircle, Rectangle
from .errors import UnsupportedShapeError, ValidationError
from .manifolds import ChartPoint
from .sampling import draw_in_batches, factor_covariance
from .serialize import csv_line

__all__ = [
    "Z95",
    "wilson_interval",
    "McEstimate",
    "Grid",
    "build_grid",
    "sample_field",
    "empirical_excursion",
    "estimates_from_sups",
    "ComparisonRow",
    "ComparisonTable",
    "compare_report",
]

# Two-sided 95% normal quantile, frozen so intervals never drift with
# the scipy version.
Z95 = 1.959963984540054

_MAX_GRID_POINTS = 10_000

_COMPARISON_COLUMNS = (
    "u",
    "analytic_total",
    "p_hat",
    "ci_low",
    "ci_high",
    "ratio",
    "within_ci",
    "resolution",
    "reps",
    "seed",
)


def wilson_interval(count: int, n: int, z: float = Z95) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion.

    Well behaved at zero and full counts (never collapses to a point,
    never leaves [0, 1]).
    """
    if not 0 <= count <= n:
        raise ValidationError(f"count {count} outside [0, {n}]")
    if n < 1:
        raise ValidationError(f"sample size must be positive, got {n}")
    p = count / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = (z / denom) * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class McEstimate:
    """Empirical P{sup >= u} with its 95% Wilson interval."""

    u: float
    p_hat: float
    ci_low: float
    ci_high: float
    reps: int
    grid_size: int
    resolution: int
    seed: int


@dataclass(frozen=True, eq=False)
class Grid:
    """Evaluation points on a domain, all in one chart."""

    domain: object
    chart: str
    coords: np.ndarray = field(repr=False)
    resolution: int

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __getitem__(self, i: int) -> ChartPoint:
        return ChartPoint(self.chart, tuple(self.coords[i]))

    def __iter__(self):
        for row in self.coords:
            yield ChartPoint(self.chart, tuple(row))

    def refine(self) -> "Grid":
        """A finer grid containing this one as an exact prefix."""
        return _refine_grid(self)


def _cap_points(n: int) -> None:
    if n > _MAX_GRID_POINTS:
        raise ValidationError(
            f"grid would have {n} points; more than {_MAX_GRID_POINTS} is refused "
            "(dense factorization budget)"
        )


def _tensor(axes: list[np.ndarray]) -> np.ndarray:
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _check_resolution(resolution: int) -> int:
    if not isinstance(resolution, (int, np.integer)) or isinstance(resolution, bool):
        raise ValidationError(f"resolution must be an integer, got {resolution!r}")
    if resolution < 2:
        raise ValidationError(f"resolution must be at least 2, got {resolution}")
    return int(resolution)


def _sphere_rows(resolution: int) -> list[tuple[float, np.ndarray]]:
    """(latitude, longitude array) rows of the 2-sphere grid."""
    rows = []
    for i in range(resolution):
        theta = (i + 0.5) * math.pi / resolution
        count = max(1, int(round(2.0 * resolution * math.sin(theta))))
        rows.append((theta, np.arange(count) * (2.0 * math.pi / count)))
    return rows


def build_grid(domain, resolution: int) -> Grid:
    """Quasi-uniform evaluation grid on a catalogue domain."""
    resolution = _check_resolution(resolution)

    if isinstance(domain, Rectangle):
        _cap_points(resolution ** len(domain.sides))
        axes = [np.linspace(0.0, side, resolution) for side in domain.sides]
        return Grid(domain, "main", _tensor(axes), resolution)

    if isinstance(domain, FullTorus):
        _cap_points(resolution ** len(domain.periods))
        axes = [np.arange(resolution) * (p / resolution) for p in domain.periods]
        return Grid(domain, "main", _tensor(axes), resolution)

    if isinstance(domain, FullSphere):
        if domain.dim == 1:
            _cap_points(resolution)
            coords = (np.arange(resolution) * (2.0 * math.pi / resolution))[:, None]
            return Grid(domain, "north", coords, resolution)
        if domain.dim == 2:
            rows = _sphere_rows(resolution)
            _cap_points(sum(r[1].shape[0] for r in rows))
            blocks = [
                np.stack([np.full(phis.shape[0], theta), phis], axis=-1)
                for theta, phis in rows
            ]
            return Grid(domain, "north", np.concatenate(blocks, axis=0), resolution)
        raise UnsupportedShapeError(
            f"no grid scheme for spheres of dimension {domain.dim}"
        )

    if isinstance(domain, GreatCircle):
        _cap_points(resolution)
        phis = np.arange(resolution) * (2.0 * math.pi / resolution)
        coords = np.stack([np.full(resolution, math.pi / 2.0), phis], axis=-1)
        return Grid(domain, "north", coords, resolution)

    if isinstance(domain, Ball):
        raise UnsupportedShapeError("no grid scheme for balls")
    raise UnsupportedShapeError(f"no grid scheme for {type(domain).__name__}")


def _interleave_new(fine_axes: list[np.ndarray]) -> np.ndarray:
    """Points of the fine tensor grid with at least one odd index."""
    dim = len(fine_axes)
    fine_sizes = [a.shape[0] for a in fine_axes]
    rows = []
    for flat in range(int(np.prod(fine_sizes))):
        idx = []
        rem = flat
        for size in reversed(fine_sizes):
            idx.append(rem % size)
            rem //= size
        idx.reverse()
        if all(i % 2 == 0 for i in idx):
            continue
        rows.append([fine_axes[d][idx[d]] for d in range(dim)])
    return np.asarray(rows, dtype=float).reshape(len(rows), dim)


def _refine_grid(grid: Grid) -> Grid:
    domain = grid.domain

    if isinstance(domain, Rectangle):
        # 2R - 1 points per axis keep the coarse lattice as the even
        # indices of the fine one; plain doubling would not nest.
        fine_res = 2 * grid.resolution - 1
        new = _interleave_new([np.linspace(0.0, s, fine_res) for s in domain.sides])
    elif isinstance(domain, FullTorus):
        fine_res = 2 * grid.resolution
        new = _interleave_new(
            [np.arange(fine_res) * (p / fine_res) for p in domain.periods]
        )
    elif isinstance(domain, FullSphere) and domain.dim == 2:
        # Doubled resolution moves every latitude row (midpoint rows never
        # coincide across resolutions), so the whole fine grid is new.
        fine_res = 2 * grid.resolution
        new = build_grid(domain, fine_res).coords
    elif isinstance(domain, (GreatCircle, FullSphere)):
        fine_res = 2 * grid.resolution
        fine_phis = np.arange(fine_res) * (2.0 * math.pi / fine_res)
        odd = fine_phis[1::2]
        if isinstance(domain, GreatCircle):
            new = np.stack([np.full(odd.shape[0], math.pi / 2.0), odd], axis=-1)
        else:
            new = odd[:, None]
    else:
        raise UnsupportedShapeError(f"no refinement scheme for {type(domain).__name__}")

    coords = np.concatenate([grid.coords, new], axis=0)
    _cap_points(coords.shape[0])
    return Grid(domain, grid.chart, coords, fine_res)


def sample_field(
    model, grid: Grid, reps: int, seed: int, *, fixed_rel_jitter: float | None = None
) -> np.ndarray:
    """Per-replication grid maxima of exact joint field samples."""
    if not isinstance(reps, (int, np.integer)) or reps < 1:
        raise ValidationError(f"replication count must be a positive integer, got {reps!r}")
    cov = model.covariance_matrix(grid.chart, grid.coords)
    factor, _ = factor_covariance(cov, fixed_rel_jitter=fixed_rel_jitter)
    sups = np.empty(int(reps))
    for start, block in draw_in_batches(factor, int(reps), seed):
        sups[start : start + block.shape[1]] = block.max(axis=0)
    return sups


def estimates_from_sups(
    sups: np.ndarray, u_grid, *, grid_size: int, resolution: int, seed: int
) -> list[McEstimate]:
    """Threshold counts and Wilson intervals on a shared sample set."""
    sups = np.asarray(sups, dtype=float)
    reps = sups.shape[0]
    out = []
    for u in u_grid:
        u = float(u)
        if not math.isfinite(u):
            raise ValidationError(f"levels must be finite, got {u}")
        count = int(np.sum(sups >= u))
        low, high = wilson_interval(count, reps)
        out.append(
            McEstimate(
                u=u,
                p_hat=count / reps,
                ci_low=low,
                ci_high=high,
                reps=reps,
                grid_size=int(grid_size),
                resolution=int(resolution),
                seed=int(seed),
            )
        )
    return out


def empirical_excursion(
    model,
    domain,
    u_grid,
    resolution: int,
    reps: int,
    seed: int,
    *,
    fixed_rel_jitter: float | None = None,
) -> list[McEstimate]:
    """Empirical P{sup >= u} on a fresh grid, one sample set for all u."""
    grid = build_grid(domain, resolution)
    sups = sample_field(model, grid, reps, seed, fixed_rel_jitter=fixed_rel_jitter)
    return estimates_from_sups(
        sups, u_grid, grid_size=len(grid), resolution=grid.resolution, seed=int(seed)
    )


@dataclass(frozen=True)
class ComparisonRow:
    u: float
    analytic_total: float
    p_hat: float
    ci_low: float
    ci_high: float
    ratio: float | None
    within_ci: bool
    resolution: int
    reps: int
    seed: int


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]

    def to_csv(self) -> str:
        lines = [",".join(_COMPARISON_COLUMNS)]
        for row in self.rows:
            lines.append(csv_line([getattr(row, c) for c in _COMPARISON_COLUMNS]))
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict]:
        return [
            {c: getattr(row, c) for c in _COMPARISON_COLUMNS} for row in self.rows
        ]


def compare_report(analytic, empirical) -> ComparisonTable:
    """Side-by-side rows of analytic value vs empirical estimate.

    The two sequences must cover the same levels in the same order.
    The ratio column is analytic/p_hat and empty where p_hat = 0.
    """
    analytic = list(analytic)
    empirical = list(empirical)
    if len(analytic) != len(empirical):
        raise ValidationError(
            f"analytic and empirical level grids differ in length: "
            f"{len(analytic)} vs {len(empirical)}"
        )
    rows = []
    for approx, mc in zip(analytic, empirical):
        if approx.u != mc.u:
            raise ValidationError(f"level mismatch: analytic {approx.u} vs empirical {mc.u}")
        ratio = approx.total / mc.p_hat if mc.p_hat > 0 else None
        rows.append(
            ComparisonRow(
                u=mc.u,
                analytic_total=approx.total,
                p_hat=mc.p_hat,
                ci_low=mc.ci_low,
                ci_high=mc.ci_high,
                ratio=ratio,
                within_ci=mc.ci_low <= approx.total <= mc.ci_high,
                resolution=mc.resolution,
                reps=mc.reps,
                seed=mc.seed,
            )
        )
    return ComparisonTable(rows=tuple(rows))
