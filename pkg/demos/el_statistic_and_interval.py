"""
The empirical likelihood statistic for a mean
=============================================

Evaluate the statistic on a small sample, look at the reweighted
observations, and turn the chi-square(1) critical value into a confidence
interval for the mean.
"""

import numpy as np

from elcal import el_confidence_interval, el_statistic
from elcal.special import chisq1_quantile, chisq1_sf

# Three observations, hypothesised mean 2. The weights tilt towards the
# small values so that the weighted mean is exactly 2.
res = el_statistic([1.0, 2.0, 4.0], 2.0)
print("statistic", res.statistic, "= 2 log(9/8) =", 2 * np.log(9 / 8))
print("lambda   ", res.lam)
print("weights  ", res.weights, "sum", res.weights.sum())
print("p-value  ", chisq1_sf(res.statistic))

# Outside the convex hull of the data no reweighting works, so the
# statistic is infinite and the test always rejects.
print(el_statistic([1.0, 2.0, 4.0], 5.0))

# A skewed sample: the statistic grows monotonically on either side of the
# sample mean, and much faster towards the short tail.
rng = np.random.default_rng(1)
y = rng.exponential(size=25)
for mu in np.linspace(y.mean() - 0.4, y.mean() + 0.4, 9):
    print(f"mu0={mu:6.3f}  ell={el_statistic(y, mu).statistic:8.4f}")

# The interval {mu : ell(mu) <= c} is not symmetric about the mean.
for cov in (0.9, 0.95, 0.99):
    ci = el_confidence_interval(y, chisq1_quantile(cov), level=cov)
    print(f"{cov:.0%} interval: [{ci.lower:.4f}, {ci.upper:.4f}]  mean {y.mean():.4f}")
