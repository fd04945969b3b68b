"""Scalar special functions: standard normal, chi-square(1), incomplete gamma.

Everything here is pure and works on Python floats. The chi-square(1)
routines go through the normal distribution via
``F(x) = 2 * Phi(sqrt(x)) - 1``; the incomplete gamma is only needed for
general chi-square cdfs in sampler checks.
"""

import math

__all__ = [
    "DomainError",
    "std_normal_pdf",
    "std_normal_cdf",
    "std_normal_sf",
    "std_normal_quantile",
    "chisq1_cdf",
    "chisq1_sf",
    "chisq1_quantile",
    "regularized_incomplete_gamma",
    "regularized_incomplete_gamma_upper",
    "inverse_regularized_incomplete_gamma",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_EPS = 2.220446049250313e-16
_TINY = 1e-300


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


def std_normal_pdf(x):
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x):
    """Phi(x), accurate in relative terms in the lower tail."""
    return 0.5 * math.erfc(-x / _SQRT2)


def std_normal_sf(x):
    """1 - Phi(x) without cancellation in the upper tail."""
    return 0.5 * math.erfc(x / _SQRT2)


# Wichura (1988), algorithm AS 241, PPND16.
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly(coefs, x):
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


def _ppnd16(p):
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly(_B, r)
    r = p if q < 0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        val = _poly(_C, r) / _poly(_D, r)
    else:
        r -= 5.0
        val = _poly(_E, r) / _poly(_F, r)
    return -val if q < 0 else val


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf` on the open unit interval.

    A rational approximation followed by one Newton step on the cdf. The
    residual is formed on whichever tail is smaller, so relative accuracy
    survives for p close to 0 or 1.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs 0 < p < 1, got {p!r}")
    x = _ppnd16(p)
    if p < 0.5:
        resid = std_normal_cdf(x) - p
    else:
        resid = (1.0 - p) - std_normal_sf(x)
    dens = std_normal_pdf(x)
    if dens > 0.0:
        x -= resid / dens
    return x


def _upper_normal_quantile(q):
    # x with 1 - Phi(x) = q, keeping precision for tiny q
    return -std_normal_quantile(q)


def chisq1_cdf(x):
    if x < 0 or math.isnan(x):
        raise DomainError(f"chi-square cdf needs x >= 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    # 2 Phi(sqrt x) - 1 == erf(sqrt(x / 2))
    return math.erf(math.sqrt(0.5 * x))


def chisq1_sf(x):
    """Upper tail 1 - F(x); this is the asymptotic p-value of an EL statistic."""
    if x < 0 or math.isnan(x):
        raise DomainError(f"chi-square sf needs x >= 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    return math.erfc(math.sqrt(0.5 * x))


def chisq1_quantile(p):
    """x with ``chisq1_cdf(x) == p`` for 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"chi-square quantile needs 0 < p < 1, got {p!r}")
    z = _upper_normal_quantile(0.5 * (1.0 - p))
    return z * z


def _gamma_series(a, x):
    # P(a, x) by its power series; converges quickly for x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_contfrac(a, x):
    # Q(a, x) by modified Lentz on the Legendre continued fraction
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _check_gamma_args(a, x):
    if not a > 0 or math.isinf(a):
        raise DomainError(f"incomplete gamma needs a > 0, got {a!r}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"incomplete gamma needs x >= 0, got {x!r}")


def regularized_incomplete_gamma(a, x):
    """Lower regularized incomplete gamma P(a, x)."""
    _check_gamma_args(a, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_contfrac(a, x)


def regularized_incomplete_gamma_upper(a, x):
    """Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x)."""
    _check_gamma_args(a, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_contfrac(a, x)


def inverse_regularized_incomplete_gamma(a, p):
    """x >= 0 with P(a, x) = p.

    Starting guess from Numerical Recipes (3rd ed., ``invgammp``), then
    Halley steps kept inside a bisection bracket.
    """
    if not a > 0:
        raise DomainError(f"inverse incomplete gamma needs a > 0, got {a!r}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"inverse incomplete gamma needs 0 <= p <= 1, got {p!r}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return math.inf

    gln = math.lgamma(a)
    a1 = a - 1.0
    if a > 1.0:
        lna1 = math.log(a1)
        afac = math.exp(a1 * (lna1 - 1.0) - gln)
        pp = p if p < 0.5 else 1.0 - p
        t = math.sqrt(-2.0 * math.log(pp))
        x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if p < 0.5:
            x = -x
        x = max(1e-3, a * (1.0 - 1.0 / (9.0 * a) - x / (3.0 * math.sqrt(a))) ** 3)
    else:
        lna1 = afac = 0.0
        t = 1.0 - a * (0.253 + a * 0.12)
        if p < t:
            x = (p / t) ** (1.0 / a)
        else:
            x = 1.0 - math.log(1.0 - (p - t) / (1.0 - t))

    lo, hi = 0.0, math.inf
    for _ in range(200):
        if x <= 0.0:
            return 0.0
        err = regularized_incomplete_gamma(a, x) - p
        if err > 0:
            hi = x
        else:
            lo = x
        if a > 1.0:
            dens = afac * math.exp(-(x - a1) + a1 * (math.log(x) - lna1))
        else:
            dens = math.exp(-x + a1 * math.log(x) - gln)
        if dens == 0.0:
            step = math.nan
        else:
            u = err / dens
            step = u / (1.0 - 0.5 * min(1.0, u * (a1 / x - 1.0)))
        new = x - step
        if not (lo < new < hi) or math.isnan(new):
            new = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * x
        if abs(new - x) <= 1e-15 * max(x, 1e-300):
            return new
        x = new
    return x
