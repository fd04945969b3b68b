"""Standard curves: realised size of the chi-square EL test.

Three kinds are produced:

* ``VS_SAMPLE_SIZE`` -- alpha_hat against n at a fixed nominal alpha, one
  batch per n (seeded from the curve seed and n);
* ``SCALED_DEVIATION`` -- the same points mapped to ``n |alpha_hat - alpha|``;
* ``VS_NOMINAL_LEVEL`` -- alpha_hat against nominal alpha at a fixed n, all
  points thresholding a single batch.
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .distributions import moments
from .montecarlo import DEFAULT_B, empirical_size, run_batch
from .rng import derive_seed
from .zhang import predicted_size

__all__ = [
    "CurveKind",
    "CurvePoint",
    "StandardCurve",
    "curve_vs_n",
    "curve_vs_alpha",
    "curve_from_batch",
    "curve_scaled_deviation",
    "coverage_points",
    "DEFAULT_N_GRID",
    "TABLE_N_GRID",
    "DEFAULT_ALPHA_GRID",
    "batch_seed",
]

TABLE_N_GRID = (10, 15, 20, 30, 50, 100)
DEFAULT_N_GRID = tuple(sorted(set(TABLE_N_GRID) | set(range(10, 101, 5))))
# 0.001 steps on [0.002, 0.01), then 0.005 steps up to 0.5
DEFAULT_ALPHA_GRID = tuple(
    round(a, 6) for a in [i / 1000 for i in range(2, 10)] + [i / 200 for i in range(2, 101)]
)


class CurveKind(enum.Enum):
    VS_SAMPLE_SIZE = "VsSampleSize"
    VS_NOMINAL_LEVEL = "VsNominalLevel"
    SCALED_DEVIATION = "ScaledDeviation"


@dataclass(frozen=True)
class CurvePoint:
    abscissa: float
    alpha_hat: float
    std_error: float
    zhang_prediction: float | None = None


@dataclass(frozen=True)
class StandardCurve:
    """An ordered set of curve points plus what was held fixed.

    ``fixed_value`` is the nominal alpha for ``VS_SAMPLE_SIZE`` and
    ``SCALED_DEVIATION`` curves and the sample size for ``VS_NOMINAL_LEVEL``.
    ``hull_violation_rate`` is only meaningful for single-batch curves.
    """

    kind: CurveKind
    fixed_value: float
    spec: object
    points: tuple
    B: int
    seed: int
    hull_violation_rate: float | None = None
    seeds: tuple = field(default=())

    def __post_init__(self):
        xs = [p.abscissa for p in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve abscissas must be strictly increasing")

    @property
    def abscissas(self):
        return np.array([p.abscissa for p in self.points])

    @property
    def ordinates(self):
        return np.array([p.alpha_hat for p in self.points])


def batch_seed(seed, n):
    """Seed used for the batch at sample size ``n`` within a curve or table run."""
    return derive_seed(seed, n)


def _zhang(spec, n, alpha):
    try:
        m = moments(spec)
    except ValueError:
        return None
    if not m.has_shape_moments:
        return None
    return predicted_size(n, alpha, m)


def curve_vs_n(spec, alpha, n_grid=DEFAULT_N_GRID, B=DEFAULT_B, seed=0, workers=1, cache_dir=None):
    """Realised size against sample size at nominal level ``alpha``."""
    n_grid = [int(n) for n in n_grid]
    if any(n < 2 for n in n_grid):
        raise ValueError("every n must be >= 2")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("n_grid must be strictly increasing")
    points, seeds = [], []
    for n in n_grid:
        s = batch_seed(seed, n)
        batch = run_batch(spec, n, B, s, workers=workers, cache_dir=cache_dir)
        a_hat, se = empirical_size(batch, alpha)
        points.append(CurvePoint(float(n), a_hat, se, _zhang(spec, n, alpha)))
        seeds.append(s)
    return StandardCurve(CurveKind.VS_SAMPLE_SIZE, alpha, spec, tuple(points), B, seed, seeds=tuple(seeds))


def curve_scaled_deviation(curve):
    """Map each point of a size-vs-n curve to ``n * |alpha_hat - alpha|``.

    Standard errors and predictions are scaled the same way.
    """
    if curve.kind is not CurveKind.VS_SAMPLE_SIZE:
        raise ValueError(f"expected a {CurveKind.VS_SAMPLE_SIZE.value} curve, got {curve.kind.value}")
    alpha = curve.fixed_value
    pts = []
    for p in curve.points:
        n = p.abscissa
        z = None if p.zhang_prediction is None else n * abs(p.zhang_prediction - alpha)
        pts.append(CurvePoint(n, n * abs(p.alpha_hat - alpha), n * p.std_error, z))
    return replace(curve, kind=CurveKind.SCALED_DEVIATION, points=tuple(pts))


def curve_from_batch(batch, alpha_grid=DEFAULT_ALPHA_GRID, seed=None):
    """Realised size against nominal level, all from one batch."""
    alpha_grid = [float(a) for a in alpha_grid]
    if any(not 0.0 < a < 1.0 for a in alpha_grid):
        raise ValueError("nominal levels must lie in (0, 1)")
    if any(b <= a for a, b in zip(alpha_grid, alpha_grid[1:])):
        raise ValueError("alpha_grid must be strictly increasing")
    pts = []
    for a in alpha_grid:
        a_hat, se = empirical_size(batch, a)
        pts.append(CurvePoint(a, a_hat, se, _zhang(batch.spec, batch.n, a)))
    return StandardCurve(
        CurveKind.VS_NOMINAL_LEVEL, float(batch.n), batch.spec, tuple(pts), batch.B,
        batch.seed if seed is None else seed,
        hull_violation_rate=batch.hull_violation_rate, seeds=(batch.seed,),
    )


def curve_vs_alpha(spec, n, alpha_grid=DEFAULT_ALPHA_GRID, B=DEFAULT_B, seed=0, workers=1, cache_dir=None):
    """Realised size against nominal level at fixed ``n``.

    The batch seed is derived from ``(seed, n)`` exactly as in
    :func:`curve_vs_n`, so both curves share replicates at a common n.
    """
    batch = run_batch(spec, n, B, batch_seed(seed, n), workers=workers, cache_dir=cache_dir)
    return curve_from_batch(batch, alpha_grid, seed=seed)


def coverage_points(curve):
    """``(1 - alpha, 1 - alpha_hat)`` pairs of a nominal-level curve."""
    if curve.kind is not CurveKind.VS_NOMINAL_LEVEL:
        raise ValueError("coverage form only applies to nominal-level curves")
    return [(1.0 - p.abscissa, 1.0 - p.alpha_hat) for p in curve.points]
