"""
Checking the second-order expansion
===================================

The coverage error of the test is, to first order, the moment gap
s2/2 - s1^2/3 times a negative integral, divided by 2n. Compare it with
simulation, and show that the integral has a closed form.
"""

import numpy as np

from elcal.distributions import PRESETS, moments
from elcal.montecarlo import empirical_size, run_batch
from elcal.zhang import hermite_integral, pearson_gap, predicted_size

# closed form against a plain Riemann sum
for c in (1.0, 2.706, 3.841, 6.635):
    x = np.linspace(-np.sqrt(c), np.sqrt(c), 200_001)
    f = (x**2 - 1) * np.exp(-x**2 / 2) / np.sqrt(2 * np.pi)
    print(f"c={c:6.3f}  closed {hermite_integral(c):.6f}  numeric {np.sum(0.5 * (f[1:] + f[:-1]) * np.diff(x)):.6f}")

for name in ("normal", "exponential", "uniform", "gamma"):
    m = moments(PRESETS[name])
    print(f"\n{name}: skewness {m.skewness:.3f}, kurtosis {m.kurtosis:.3f}, gap {pearson_gap(m):.4f}")
    for n in (20, 50, 100):
        a_hat, se = empirical_size(run_batch(PRESETS[name], n, 100_000, seed=n), 0.05)
        print(f"  n={n:3d}  simulated {a_hat:.4f} +/- {se:.4f}   predicted {predicted_size(n, 0.05, m):.4f}")
