import math

import numpy as np
import pytest

from elcal.distributions import DistributionSpec, Family
from elcal.montecarlo import (
    CHUNK,
    ReplicateBatch,
    batch_cache_path,
    empirical_critical_value,
    empirical_size,
    load_batch,
    rejection_rate,
    run_batch,
    save_batch,
)

NORMAL = DistributionSpec(Family.NORMAL, (0, 1))
EXP = DistributionSpec(Family.EXPONENTIAL, (1,))
EXP_HULL_N10 = (1 - math.exp(-1)) ** 10 + math.exp(-10)  # P(all y < 1) + P(all y > 1)


def toy(values, hull=0):
    stats = np.sort(np.asarray(values, dtype=float))
    return ReplicateBatch(NORMAL, 5, stats.size, 0, 0.0, stats, hull)


def test_deterministic_and_sorted():
    a = run_batch(EXP, 12, 3000, seed=5)
    b = run_batch(EXP, 12, 3000, seed=5)
    assert a.same_as(b)
    assert np.all(np.diff(a.statistics[np.isfinite(a.statistics)]) >= 0)
    assert a.statistics.size == 3000 and a.mu0 == 1.0
    assert a.hull_violations == int(np.isinf(a.statistics).sum())
    assert not a.same_as(run_batch(EXP, 12, 3000, seed=6))


def test_read_only():
    a = run_batch(NORMAL, 5, 200, seed=1)
    with pytest.raises(ValueError):
        a.statistics[0] = 0.0


def test_worker_count_invariance():
    B = 2 * CHUNK + 517
    ref = run_batch(DistributionSpec(Family.GAMMA, (0.7, 1)), 8, B, seed=77, workers=1)
    for w in (2, 8):
        assert ref.same_as(run_batch(DistributionSpec(Family.GAMMA, (0.7, 1)), 8, B, seed=77, workers=w))


def test_prefix_consistency():
    # replicate b does not depend on B, so a larger batch contains the smaller one
    small = run_batch(NORMAL, 6, 1000, seed=3)
    big = run_batch(NORMAL, 6, CHUNK + 10, seed=3)
    assert np.isin(small.statistics, big.statistics).all()


def test_normal_n50_band():
    batch = run_batch(NORMAL, 50, 100_000, seed=2718)
    assert 0.05 <= rejection_rate(batch, 3.841) <= 0.07


def test_exponential_hull_rate():
    assert EXP_HULL_N10 == pytest.approx(0.0102313, abs=1e-7)
    batch = run_batch(EXP, 10, 100_000, seed=99)
    assert abs(batch.hull_violation_rate - EXP_HULL_N10) <= 0.002
    # 4 standard errors as well, a stricter check than the stated band
    se = math.sqrt(EXP_HULL_N10 * (1 - EXP_HULL_N10) / batch.B)
    assert abs(batch.hull_violation_rate - EXP_HULL_N10) <= 4 * se


def test_empirical_size_counting():
    b = toy([1, 2, 3, 4])
    assert rejection_rate(b, 2.5) == 0.5
    assert rejection_rate(b, 4.0) == 0.0
    a, se = empirical_size(b, 0.5)  # c = 0.4549
    assert a == 1.0 and se == 0.0


def test_empirical_size_zero_above_max():
    a, se = empirical_size(toy([0.1, 0.2, 0.3]), 0.01)
    assert a == 0.0 and se == 0.0


def test_size_floor_and_limits():
    batch = run_batch(EXP, 10, 20_000, seed=4)
    floor = batch.hull_violation_rate
    prev = 0.0
    for alpha in np.linspace(0.001, 0.999, 60):
        a, _ = empirical_size(batch, alpha)
        assert a >= floor and a >= prev
        prev = a
    assert empirical_size(batch, 1 - 1e-12)[0] == 1.0


def test_standard_error_bound_at_default_b():
    for a in np.linspace(0, 0.25, 26):
        assert math.sqrt(a * (1 - a) / 1_000_000) <= 5e-4


def test_empirical_critical_value_examples():
    assert empirical_critical_value(toy([1, 2, 3, 4]), 0.25, min_tail=1) == 4.0
    assert empirical_critical_value(toy([1, 2, 3, 4]), 0.5, min_tail=1) == 3.0
    with pytest.raises(ValueError):
        empirical_critical_value(toy([1, 2, 3, 4]), 0.25)
    assert empirical_critical_value(toy([1, 2, math.inf, math.inf], hull=2), 0.25, min_tail=1) is None


def test_empirical_critical_value_monotone():
    batch = run_batch(NORMAL, 10, 20_000, seed=8)
    # hull-violation mass is 2 / 2**10, above 0.001
    assert empirical_critical_value(batch, 0.001) is None
    vals = [empirical_critical_value(batch, a) for a in (0.005, 0.01, 0.05, 0.1, 0.3)]
    assert all(x >= y for x, y in zip(vals, vals[1:]))
    # level-consistency: rejecting above the critical value gives at most alpha
    for a, v in zip((0.005, 0.01, 0.05, 0.1, 0.3), vals):
        assert rejection_rate(batch, v) <= a


@pytest.mark.parametrize("spec", [DistributionSpec(Family.STUDENT_T, (2,)), DistributionSpec(Family.STUDENT_T, (1,))])
def test_heavy_tails_rejected(spec):
    with pytest.raises(ValueError):
        run_batch(spec, 10, 100)


def test_bad_arguments():
    for kw in ({"n": 1}, {"n": 5, "B": 0}, {"n": 5, "workers": 0}):
        with pytest.raises(ValueError):
            run_batch(NORMAL, **{"B": 10, **kw})


def test_cache_round_trip(tmp_path):
    spec = DistributionSpec(Family.LAPLACE, (-1.5, 0.5))
    batch = run_batch(spec, 4, 500, seed=21, cache_dir=tmp_path)
    path = batch_cache_path(tmp_path, spec, 4, 500, 21)
    assert path.exists()
    assert load_batch(path).same_as(batch)
    # second call is served from the cache
    again = run_batch(spec, 4, 500, seed=21, cache_dir=tmp_path)
    assert again.same_as(batch) and again.hull_violations == batch.hull_violations
    other = tmp_path / "copy.csv"
    save_batch(batch, other)
    assert other.read_bytes() == path.read_bytes()


def test_cache_rejects_garbage(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("hello\n1\n")
    with pytest.raises(ValueError):
        load_batch(p)
