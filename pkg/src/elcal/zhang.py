"""Second-order coverage expansion for the EL test of a mean.

Under the null, with skewness s1 and (non-excess) kurtosis s2,

    P(ell <= c) = 1 - alpha + (1 / 2n) (s2/2 - s1^2/3) I(c) + O(n^-3/2),
    I(c) = int_{-sqrt c}^{sqrt c} (x^2 - 1) phi(x) dx = -sqrt(2/pi) sqrt(c) exp(-c/2),

where c is the chi-square(1) (1 - alpha)-quantile. Both factors have fixed
signs (the moment gap is positive, the integral negative), so the predicted
size always exceeds alpha.
"""

import math
from dataclasses import dataclass

from .special import DomainError, chisq1_quantile

__all__ = ["ZhangTerm", "hermite_integral", "pearson_gap", "predicted_size", "zhang_term"]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def hermite_integral(c):
    """Closed form of the integral of ``(x^2 - 1) phi(x)`` over ``[-sqrt c, sqrt c]``."""
    if not c > 0:
        raise DomainError(f"hermite_integral needs c > 0, got {c!r}")
    return -_SQRT_2_OVER_PI * math.sqrt(c) * math.exp(-0.5 * c)


def _shape_moments(moments):
    if moments.skewness is None or moments.kurtosis is None:
        raise ValueError("skewness and kurtosis must both be defined")
    return moments.skewness, moments.kurtosis


def pearson_gap(moments):
    """``s2/2 - s1^2/3``; positive whenever ``s2 >= s1^2 + 1``."""
    s1, s2 = _shape_moments(moments)
    return 0.5 * s2 - s1 * s1 / 3.0


@dataclass(frozen=True)
class ZhangTerm:
    n: int
    alpha: float
    s1: float
    s2: float
    c_alpha: float
    integral_value: float
    predicted_coverage: float

    @property
    def predicted_size(self):
        return 1.0 - self.predicted_coverage


def zhang_term(n, alpha, moments):
    """All ingredients of the expansion at one (n, alpha)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    s1, s2 = _shape_moments(moments)
    c = chisq1_quantile(1.0 - alpha)
    integral = hermite_integral(c)
    coverage = 1.0 - alpha + pearson_gap(moments) * integral / (2.0 * n)
    return ZhangTerm(n, alpha, s1, s2, c, integral, coverage)


def predicted_size(n, alpha, moments):
    """First-order-corrected size ``alpha - gap * I(c_alpha) / (2n)``.

    The remainder is O(n^-3/2) only for parents with a finite eighth moment
    and a non-lattice law; ``moments.eighth_moment_finite`` tells the caller
    whether the claim applies, the number is returned either way.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    c = chisq1_quantile(1.0 - alpha)
    return alpha - pearson_gap(moments) * hermite_integral(c) / (2.0 * n)
