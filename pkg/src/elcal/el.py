"""Empirical likelihood ratio for a univariate mean.

For data y_1..y_n and a hypothesised mean mu0 inside the open convex hull,
the maximising weights are ``p_i = 1 / (n (1 + lam z_i))`` with
``z_i = y_i - mu0`` and ``lam`` the unique root of

    g(lam) = sum_i z_i / (1 + lam z_i),

which is strictly decreasing on the set where every ``1 + lam z_i > 0``.
The statistic is ``-2 log R(mu0) = 2 sum_i log(1 + lam z_i)``.

:func:`el_statistic_batch` solves many samples at once (rows of a matrix);
:func:`el_statistic` is the single-sample front end that also returns the
weights.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ElStatus",
    "ElResult",
    "ConfidenceInterval",
    "el_statistic",
    "el_statistic_batch",
    "el_confidence_interval",
]

_GTOL = 1e-12
_MAXITER = 100
_BISECT_MAXITER = 200
_RELWIDTH = 1e-13


class ElStatus(enum.Enum):
    INTERIOR = "Interior"
    HULL_VIOLATION = "HullViolation"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class ElResult:
    """Outcome of the constrained maximisation at one hypothesised mean.

    ``weights`` is ``None`` for hull violations. ``lam`` is the multiplier on
    the original data scale.
    """

    statistic: float
    lam: float
    weights: np.ndarray | None
    status: ElStatus


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float | None
    critical_value: float


def _solve_dual(z, gtol=_GTOL, maxiter=_MAXITER):
    """Root of g for each row of ``z`` (every row must straddle zero).

    Stops once ``|g|`` is below ``gtol`` times the sum of the absolute
    terms of g, i.e. at a relative residual. Newton steps are accepted only while they stay inside the running
    bracket; otherwise the bracket is bisected. The starting bracket is the
    one implied by ``p_i <= 1``, i.e. ``1 + lam z_i >= 1/n``, which lies
    strictly inside the feasible interval and always contains the root.
    """
    R, n = z.shape
    shrink = 1.0 - 1.0 / n
    lo = -shrink / z.max(axis=1)
    hi = -shrink / z.min(axis=1)
    lam = np.zeros(R)
    active = np.arange(R)

    for it in range(maxiter + _BISECT_MAXITER):
        zz = z[active]
        la = lam[active]
        ratio = zz / (1.0 + la[:, None] * zz)
        g = ratio.sum(axis=1)
        dg = -(ratio * ratio).sum(axis=1)

        lo_a = np.where(g > 0, la, lo[active])
        hi_a = np.where(g > 0, hi[active], la)
        lo[active] = lo_a
        hi[active] = hi_a

        width = hi_a - lo_a
        done = (np.abs(g) <= gtol * np.abs(ratio).sum(axis=1)) | (width <= _RELWIDTH * np.maximum(1.0, np.abs(la)))
        if it < maxiter:
            with np.errstate(divide="ignore", invalid="ignore"):
                step = la - g / dg
            bad = ~((step > lo_a) & (step < hi_a))
            step = np.where(bad, 0.5 * (lo_a + hi_a), step)
        else:
            # past the Newton budget, bisect down to the relative width
            done = width <= _RELWIDTH * np.maximum(1.0, np.abs(la))
            step = 0.5 * (lo_a + hi_a)
        lam[active] = np.where(done, la, step)
        active = active[~done]
        if active.size == 0:
            break
    return lam


def _classify(z):
    zmax = z.max(axis=1)
    zmin = z.min(axis=1)
    degenerate = (zmax == 0.0) & (zmin == 0.0)
    interior = (zmin < 0.0) & (zmax > 0.0)
    return interior, degenerate


def el_statistic_batch(y, mu0):
    """Statistics for each row of ``y`` at a common ``mu0``.

    Returns ``(statistic, lam)`` arrays. Rows whose hull misses ``mu0``
    (including ``mu0`` on the boundary) get ``inf`` and ``lam = nan``; rows
    identically equal to ``mu0`` get 0.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 2 or y.shape[1] < 1:
        raise ValueError("expected a 2-d array with at least one column")
    if not math.isfinite(mu0):
        raise ValueError(f"mu0 must be finite, got {mu0!r}")
    z = y - mu0
    interior, degenerate = _classify(z)
    stat = np.full(y.shape[0], np.inf)
    lam = np.full(y.shape[0], np.nan)
    stat[degenerate] = 0.0
    lam[degenerate] = 0.0
    if interior.any():
        zi = z[interior]
        # conditioning: work on z / range, then undo on lam
        scale = zi.max(axis=1) - zi.min(axis=1)
        zs = zi / scale[:, None]
        lam_s = _solve_dual(zs)
        stat[interior] = np.maximum(2.0 * np.log1p(lam_s[:, None] * zs).sum(axis=1), 0.0)
        lam[interior] = lam_s / scale
    return stat, lam


def el_statistic(sample, mu0):
    """Empirical likelihood ratio statistic ``-2 log R(mu0)``.

    Parameters
    ----------
    sample : array_like
        One-dimensional data, at least one finite value.
    mu0 : float
        Hypothesised mean.

    Returns
    -------
    ElResult
        ``status`` is ``HULL_VIOLATION`` (statistic ``inf``) when ``mu0`` is
        not strictly between the sample minimum and maximum, and
        ``DEGENERATE`` (statistic 0) when every observation equals ``mu0``.
    """
    y = np.asarray(sample, dtype=np.float64).ravel()
    if y.size == 0:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(y)):
        raise ValueError("sample contains non-finite values")
    stat, lam = el_statistic_batch(y[None, :], float(mu0))
    stat, lam = float(stat[0]), float(lam[0])
    if math.isinf(stat):
        return ElResult(stat, math.nan, None, ElStatus.HULL_VIOLATION)
    n = y.size
    if lam == 0.0 and np.all(y == mu0):
        return ElResult(0.0, 0.0, np.full(n, 1.0 / n), ElStatus.DEGENERATE)
    weights = 1.0 / (n * (1.0 + lam * (y - mu0)))
    return ElResult(stat, lam, weights, ElStatus.INTERIOR)


def _bisect_level(y, inside, outside, c, tol):
    # ell(inside) <= c < ell(outside); ell is monotone between them
    for _ in range(200):
        mid = 0.5 * (inside + outside)
        if mid == inside or mid == outside:
            break
        if el_statistic(y, mid).statistic <= c:
            inside = mid
        else:
            outside = mid
        if abs(outside - inside) <= tol:
            break
    return inside


def el_confidence_interval(sample, critical_value, level=None):
    """Interval ``{mu : ell(mu) <= c}`` for the mean.

    Found by bisection outward from the sample mean towards each hull edge;
    the statistic is monotone along each side, so each endpoint is unique.
    ``level`` is carried through for reporting only.
    """
    y = np.asarray(sample, dtype=np.float64).ravel()
    c = float(critical_value)
    if not c > 0:
        raise ValueError("critical value must be positive")
    if y.size < 2 or np.all(y == y[0]):
        raise ValueError("confidence interval needs at least two distinct observations")
    ybar = float(y.mean())
    lo_edge, hi_edge = float(y.min()), float(y.max())
    tol = 1e-15 * (hi_edge - lo_edge) + 1e-300
    upper = _bisect_level(y, ybar, hi_edge, c, tol)
    lower = _bisect_level(y, ybar, lo_edge, c, tol)
    return ConfidenceInterval(lower, upper, level, c)
