"""Monte Carlo replicates of the EL statistic under a known parent.

One batch holds B statistics, each from a fresh sample of size n evaluated
at the parent's exact mean, sorted ascending. Samples whose convex hull
misses the mean are stored as ``inf`` and therefore count as rejections at
every level.

Replicates are processed in fixed chunks of :data:`CHUNK` indices. Each
replicate's sample is a pure function of (seed, replicate index), and the
chunking does not depend on the worker count, so the sorted batch is
bit-identical for any number of workers.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .distributions import DistributionSpec, Family, moments, parse_spec, sample
from .el import el_statistic_batch
from .rng import RandomStream
from .special import chisq1_quantile

__all__ = [
    "ReplicateBatch",
    "run_batch",
    "empirical_size",
    "rejection_rate",
    "empirical_critical_value",
    "save_batch",
    "load_batch",
    "batch_cache_path",
    "DEFAULT_B",
    "CHUNK",
]

DEFAULT_B = 1_000_000
CHUNK = 8192
RNG_NAME = "splitmix-fmix-counter-v1"


@dataclass(frozen=True, eq=False)
class ReplicateBatch:
    spec: DistributionSpec
    n: int
    B: int
    seed: int
    mu0: float
    statistics: np.ndarray
    hull_violations: int

    @property
    def hull_violation_rate(self):
        return self.hull_violations / self.B

    def same_as(self, other):
        return (
            self.spec == other.spec
            and (self.n, self.B, self.seed) == (other.n, other.B, other.seed)
            and self.mu0 == other.mu0
            and np.array_equal(self.statistics, other.statistics)
        )


def _chunk_statistics(spec, n, seed, mu0, start, stop):
    stream = RandomStream(seed, np.arange(start, stop, dtype=np.uint64))
    y = sample(spec, n, stream)
    stat, _ = el_statistic_batch(y, mu0)
    return stat


def _check_parent(spec):
    if spec.family is Family.STUDENT_T and spec.params[0] <= 2:
        raise ValueError(f"{spec.label}: the EL test of a mean needs a finite mean and variance")
    m = moments(spec)
    if not m.variance > 0:
        raise ValueError(f"{spec.label}: variance must be positive")
    return m


def run_batch(spec, n, B=DEFAULT_B, seed=0, workers=1, cache_dir=None):
    """Simulate ``B`` statistics at sample size ``n``.

    Parameters
    ----------
    spec : DistributionSpec
    n : int
        Sample size, at least 2.
    B : int
        Number of replicates.
    seed : int
        64-bit seed; replicate b uses the stream (seed, b).
    workers : int
        Threads used to process chunks. Does not affect the result.
    cache_dir : path-like, optional
        If given, a matching cached batch is loaded instead of recomputed,
        and fresh batches are written there.

    Returns
    -------
    ReplicateBatch
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if B < 1:
        raise ValueError("B must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    seed = int(seed) & ((1 << 64) - 1)
    mu0 = _check_parent(spec).mean

    path = None
    if cache_dir is not None:
        path = batch_cache_path(cache_dir, spec, n, B, seed)
        if path.exists():
            cached = load_batch(path)
            if cached.spec == spec and (cached.n, cached.B, cached.seed) == (n, B, seed):
                return cached

    bounds = [(s, min(s + CHUNK, B)) for s in range(0, B, CHUNK)]

    def job(bound):
        return _chunk_statistics(spec, n, seed, mu0, *bound)

    if workers == 1 or len(bounds) == 1:
        parts = [job(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, bounds))
    stats = np.sort(np.concatenate(parts))
    stats.flags.writeable = False
    batch = ReplicateBatch(spec, n, B, seed, mu0, stats, int(np.isinf(stats).sum()))
    if path is not None:
        save_batch(batch, path)
    return batch


def rejection_rate(batch, critical_value):
    """Fraction of replicates with statistic strictly above ``critical_value``."""
    kept = np.searchsorted(batch.statistics, critical_value, side="right")
    return (batch.B - int(kept)) / batch.B


def empirical_size(batch, alpha):
    """Realised size of the nominal-``alpha`` chi-square test.

    Returns ``(alpha_hat, std_error)`` with the binomial standard error
    ``sqrt(alpha_hat (1 - alpha_hat) / B)``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    a = rejection_rate(batch, chisq1_quantile(1.0 - alpha))
    return a, math.sqrt(a * (1.0 - a) / batch.B)


def empirical_critical_value(batch, alpha, min_tail=10):
    """Empirical (1 - alpha)-quantile of the batch, upper order statistic.

    Returns the order statistic at 0-based position ``B - ceil(alpha B)``,
    or ``None`` when that position falls in the block of hull violations.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if alpha * batch.B < min_tail:
        raise ValueError(f"alpha * B = {alpha * batch.B:g} < {min_tail}: tail too thin")
    tail = math.ceil(alpha * batch.B - 1e-9)
    value = float(batch.statistics[batch.B - tail])
    return None if math.isinf(value) else value


# -- cache ----------------------------------------------------------------


def batch_cache_path(cache_dir, spec, n, B, seed):
    params = "_".join(repr(p) for p in spec.params).replace("-", "m")
    return Path(cache_dir) / f"{spec.family.value}-{params}-n{n}-B{B}-s{seed}.csv"


def save_batch(batch, path):
    """Header line with JSON metadata, then one sorted statistic per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "spec": batch.spec.label,
        "n": batch.n,
        "B": batch.B,
        "seed": batch.seed,
        "mu0": repr(batch.mu0),
        "hull_violations": batch.hull_violations,
        "rng": RNG_NAME,
        "version": __version__,
    }
    tmp = path.with_suffix(path.suffix + f".tmp{os.getpid()}")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("# elcal-batch " + json.dumps(meta, sort_keys=True) + "\n")
        fh.write("\n".join(repr(float(v)) for v in batch.statistics))
        fh.write("\n")
    os.replace(tmp, path)


def load_batch(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("# elcal-batch "):
            raise ValueError(f"{path}: not a batch cache file")
        meta = json.loads(header[len("# elcal-batch "):])
        values = np.array([float(line) for line in fh if line.strip()])
    if meta.get("rng") != RNG_NAME:
        raise ValueError(f"{path}: produced by a different generator ({meta.get('rng')})")
    if values.size != meta["B"]:
        raise ValueError(f"{path}: expected {meta['B']} values, found {values.size}")
    values.flags.writeable = False
    return ReplicateBatch(
        parse_spec(meta["spec"]), meta["n"], meta["B"], meta["seed"],
        float(meta["mu0"]), values, meta["hull_violations"],
    )
