"""Quasi-exact critical values by interpolation on a nominal-level curve.

For a target size alpha, take the largest realised size not above alpha and
the smallest not below it, interpolate their nominal abscissas linearly to
get ``alpha_approx``, and use the chi-square(1) quantile at
``1 - alpha_approx``. A cell is NA when

* the hull-violation rate alone already reaches alpha (``FLOOR_UNREACHABLE``),
* the grid has no point on one side of alpha (``BRACKET_MISSING``), or
* ``alpha_approx`` falls below 10 / B (``QUANTILE_OVERFLOW``).
"""

import enum
import math
from dataclasses import dataclass, field

from .curves import DEFAULT_ALPHA_GRID, CurveKind, batch_seed, curve_from_batch
from .distributions import moments
from .montecarlo import DEFAULT_B, run_batch
from .special import chisq1_quantile

__all__ = [
    "NaReason",
    "CalibrationCell",
    "CalibrationTable",
    "NonInjectiveCurveError",
    "SanityReport",
    "calibrate",
    "build_table",
    "table_sanity",
    "TABLE_COVERAGES",
    "CONSERVATIVE_OFFSET",
    "MIN_TAIL_REPLICATES",
]

TABLE_COVERAGES = (0.7, 0.8, 0.85, 0.9, 0.95, 0.96, 0.97, 0.98, 0.99)
CONSERVATIVE_OFFSET = 5e-4
MIN_TAIL_REPLICATES = 10


class NaReason(enum.Enum):
    NONE = "None"
    FLOOR_UNREACHABLE = "FloorUnreachable"
    BRACKET_MISSING = "BracketMissing"
    QUANTILE_OVERFLOW = "QuantileOverflow"


class NonInjectiveCurveError(ValueError):
    """The curve is flat or folds back around the target; densify the grid or raise B."""


@dataclass(frozen=True)
class CalibrationCell:
    n: int
    target_alpha: float
    alpha_approx: float | None
    critical_value: float | None
    na_reason: NaReason = NaReason.NONE
    # ((nominal_1, alpha_hat_1), (nominal_2, alpha_hat_2)) when found
    bracket: tuple | None = None

    @property
    def is_na(self):
        return self.na_reason is not NaReason.NONE

    @property
    def target_coverage(self):
        return 1.0 - self.target_alpha


def _na(n, target, reason, bracket=None):
    return CalibrationCell(n, target, None, None, reason, bracket)


def calibrate(curve, target_alpha, offset=0.0):
    """Calibrated critical value for realised size ``target_alpha``.

    Parameters
    ----------
    curve : StandardCurve
        A ``VS_NOMINAL_LEVEL`` curve.
    target_alpha : float
        Desired realised size, in (0, 1).
    offset : float
        Subtracted from the interpolated nominal level for a conservative
        test (5e-4 is a sensible choice at B = 1e6).

    Returns
    -------
    CalibrationCell

    Raises
    ------
    NonInjectiveCurveError
        If the bracketing realised sizes are attained at more than one grid
        point, the curve crosses the target more than once, or the bracketing
        points are not increasing neighbours on the grid.
    """
    if curve.kind is not CurveKind.VS_NOMINAL_LEVEL:
        raise ValueError(f"calibration needs a {CurveKind.VS_NOMINAL_LEVEL.value} curve")
    if not 0.0 < target_alpha < 1.0:
        raise ValueError(f"target alpha must lie in (0, 1), got {target_alpha!r}")
    if offset < 0:
        raise ValueError("offset must be >= 0")
    n = int(curve.fixed_value)
    floor = curve.hull_violation_rate or 0.0
    if floor >= target_alpha:
        return _na(n, target_alpha, NaReason.FLOOR_UNREACHABLE)

    xs = [p.abscissa for p in curve.points]
    hs = [p.alpha_hat for p in curve.points]
    below = [i for i, h in enumerate(hs) if h <= target_alpha]
    above = [i for i, h in enumerate(hs) if h >= target_alpha]
    if not below or not above:
        return _na(n, target_alpha, NaReason.BRACKET_MISSING)

    h1 = max(hs[i] for i in below)
    h2 = min(hs[i] for i in above)
    at1 = [i for i in below if hs[i] == h1]
    at2 = [i for i in above if hs[i] == h2]
    if len(at1) > 1 or len(at2) > 1:
        raise NonInjectiveCurveError(
            f"n={n}: realised size {h1 if len(at1) > 1 else h2:g} repeats on the grid "
            f"near target {target_alpha:g}; use a denser grid or a larger B"
        )
    crossings = sum((a < target_alpha) != (b < target_alpha) for a, b in zip(hs, hs[1:]))
    if crossings > 1:
        raise NonInjectiveCurveError(
            f"n={n}: the curve crosses target {target_alpha:g} {crossings} times; "
            "use a denser grid or a larger B"
        )
    i1, i2 = at1[0], at2[0]
    if i1 != i2 and i2 - i1 != 1:
        raise NonInjectiveCurveError(
            f"n={n}: bracketing points for target {target_alpha:g} are not adjacent; "
            "the curve is not monotone there"
        )
    bracket = ((xs[i1], h1), (xs[i2], h2))
    if i1 == i2:
        approx = xs[i1]
    else:
        approx = xs[i1] + (target_alpha - h1) * (xs[i2] - xs[i1]) / (h2 - h1)
    approx -= offset
    if approx < MIN_TAIL_REPLICATES / curve.B:
        return _na(n, target_alpha, NaReason.QUANTILE_OVERFLOW, bracket)
    return CalibrationCell(n, target_alpha, approx, chisq1_quantile(1.0 - approx), NaReason.NONE, bracket)


@dataclass(frozen=True)
class CalibrationTable:
    """Rows are sample sizes, columns target coverages ``1 - alpha``."""

    spec: object
    n_list: tuple
    coverage_list: tuple
    cells: tuple  # rows of CalibrationCell
    B: int
    seed: int
    conservative_offset: float = 0.0
    alpha_grid: tuple = field(default=DEFAULT_ALPHA_GRID, repr=False)

    def cell(self, n, coverage):
        i = self.n_list.index(n)
        j = min(range(len(self.coverage_list)), key=lambda k: abs(self.coverage_list[k] - coverage))
        if abs(self.coverage_list[j] - coverage) > 1e-12:
            raise KeyError(coverage)
        return self.cells[i][j]

    def values(self):
        """Critical values as nested lists, ``None`` for NA cells."""
        return [[c.critical_value for c in row] for row in self.cells]


def build_table(spec, n_list, coverage_list=TABLE_COVERAGES, B=DEFAULT_B, seed=0, offset=0.0,
                alpha_grid=DEFAULT_ALPHA_GRID, workers=1, cache_dir=None):
    """One batch per n, one calibrated cell per target coverage.

    Batches are seeded per n with the same rule as the curve builders, so a
    table and a curve run with the same seed share replicates.
    """
    n_list = tuple(int(n) for n in n_list)
    coverage_list = tuple(float(c) for c in coverage_list)
    if not n_list or not coverage_list:
        raise ValueError("n_list and coverage_list must be nonempty")
    if any(not 0.0 < c < 1.0 for c in coverage_list):
        raise ValueError("coverages must lie in (0, 1)")
    rows = []
    for n in n_list:
        batch = run_batch(spec, n, B, batch_seed(seed, n), workers=workers, cache_dir=cache_dir)
        curve = curve_from_batch(batch, alpha_grid, seed=seed)
        rows.append(tuple(calibrate(curve, 1.0 - c, offset) for c in coverage_list))
    return CalibrationTable(spec, n_list, coverage_list, tuple(rows), B, seed, offset, tuple(alpha_grid))


@dataclass
class SanityReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def table_sanity(table, reference=None, reference_tol=0.0, convergence_tol=0.25):
    """Consistency checks on a calibration table.

    * each column decreases in n;
    * each row increases in coverage;
    * every cell is at least the asymptotic chi-square(1) quantile;
    * in rows with n >= 100 the relative excess over that quantile is at most
      ``convergence_tol``;
    * optionally, cell-by-cell agreement with ``reference`` (same layout)
      within ``reference_tol``, NA matching NA.

    NA cells are skipped by the ordering checks.
    """
    report = SanityReport()
    vals = table.values()
    cov = table.coverage_list
    for j, c in enumerate(cov):
        q = chisq1_quantile(c)
        col = [(table.n_list[i], vals[i][j]) for i in range(len(table.n_list)) if vals[i][j] is not None]
        for (n1, v1), (n2, v2) in zip(col, col[1:]):
            if not v2 < v1:
                report.violations.append(f"coverage {c:g}: value at n={n2} ({v2:.4f}) not below n={n1} ({v1:.4f})")
        for n, v in col:
            if v < q:
                report.violations.append(f"n={n}, coverage {c:g}: {v:.4f} below asymptotic quantile {q:.4f}")
            if n >= 100 and (v - q) / q > convergence_tol:
                report.violations.append(
                    f"n={n}, coverage {c:g}: {v:.4f} exceeds asymptotic {q:.4f} by more than {convergence_tol:.0%}"
                )
    for i, n in enumerate(table.n_list):
        row = [(cov[j], vals[i][j]) for j in range(len(cov)) if vals[i][j] is not None]
        for (c1, v1), (c2, v2) in zip(row, row[1:]):
            if not v2 > v1:
                report.violations.append(f"n={n}: value at coverage {c2:g} ({v2:.4f}) not above {c1:g} ({v1:.4f})")
    if reference is not None:
        rvals = reference.values()
        if (reference.n_list, reference.coverage_list) != (table.n_list, table.coverage_list):
            report.violations.append("reference table has a different layout")
        else:
            for i, n in enumerate(table.n_list):
                for j, c in enumerate(cov):
                    a, b = vals[i][j], rvals[i][j]
                    if (a is None) != (b is None):
                        report.violations.append(f"n={n}, coverage {c:g}: NA mismatch ({a} vs {b})")
                    elif a is not None and abs(a - b) > reference_tol:
                        report.violations.append(f"n={n}, coverage {c:g}: {a:.4f} vs reference {b:.4f}")
    return report


def table_from_values(spec, n_list, coverage_list, values, B=0, seed=0, offset=0.0):
    """Wrap a grid of critical values (``None`` for NA) as a table.

    Useful for checking published or re-parsed tables with
    :func:`table_sanity`; only ``critical_value`` and NA status are set.
    """
    rows = []
    for n, row in zip(n_list, values):
        cells = []
        for c, v in zip(coverage_list, row):
            if v is None or (isinstance(v, float) and math.isnan(v)):
                cells.append(_na(int(n), 1.0 - c, NaReason.BRACKET_MISSING))
            else:
                cells.append(CalibrationCell(int(n), 1.0 - c, None, float(v)))
        rows.append(tuple(cells))
    return CalibrationTable(spec, tuple(int(n) for n in n_list), tuple(float(c) for c in coverage_list),
                            tuple(rows), B, seed, offset)


def describe_moments(spec):
    """Moment summary as a flat dict for metadata footers."""
    m = moments(spec)
    return {
        "mean": m.mean,
        "variance": m.variance,
        "skewness": m.skewness,
        "kurtosis": m.kurtosis,
        "eighth_moment_finite": m.eighth_moment_finite,
    }
