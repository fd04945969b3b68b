"""
Realised size against sample size
=================================

Simulate the rejection rate of the nominal 5% test for several parents and
compare it with the second-order prediction. Curves decay like 1/n towards
the nominal level, so n times the excess should level off.
"""

from elcal.curves import curve_scaled_deviation, curve_vs_n
from elcal.distributions import PRESETS
from elcal.reporting import curve_to_text

B = 50_000
grid = (10, 15, 20, 30, 50, 100)

for name in ("normal", "exponential", "uniform", "gamma", "chisquare"):
    curve = curve_vs_n(PRESETS[name], 0.05, grid, B=B, seed=1)
    print(curve_to_text(curve))

# n * |alpha_hat - alpha| for the normal parent: roughly flat once n is
# moderate. The prediction column is the same scaling of the expansion.
print(curve_to_text(curve_scaled_deviation(curve_vs_n(PRESETS["normal"], 0.05, grid, B=B, seed=1))))

# Matched-moment pairs. Same mean, variance and kurtosis but different
# skewness: the skewed gamma curve sits lower. Same skewness but larger
# kurtosis: the t(5) curve sits higher than the normal one.
for a, b in (("skew-pair-gamma", "skew-pair-laplace"), ("kurtosis-pair-normal", "kurtosis-pair-t")):
    ca = curve_vs_n(PRESETS[a], 0.05, (30, 50, 100), B=B, seed=2)
    cb = curve_vs_n(PRESETS[b], 0.05, (30, 50, 100), B=B, seed=2)
    for pa, pb in zip(ca.points, cb.points):
        print(f"n={pa.abscissa:5.0f}  {a}: {pa.alpha_hat:.4f}   {b}: {pb.alpha_hat:.4f}")
