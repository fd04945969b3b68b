"""Parent distributions: exact moments, densities and stream-driven samplers.

Parameterisations follow the usual textbook conventions:

=============  =================  ======================================
family         params             meaning
=============  =================  ======================================
normal         (mu, sigma2)       mean and *variance*
exponential    (rate,)            density rate * exp(-rate * y)
uniform        (a, b)             support [a, b]
gamma          (shape, rate)      density rate^shape y^(shape-1) e^(-rate y) / Gamma(shape)
chisquare      (nu,)              degrees of freedom
laplace        (mu, b)            location and scale
student_t      (nu,)              degrees of freedom
=============  =================  ======================================

Kurtosis is reported on the non-excess scale (normal = 3).
"""

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from .rng import RandomStream, counter

__all__ = [
    "Family",
    "DistributionSpec",
    "MomentSummary",
    "SpecParseError",
    "moments",
    "sample",
    "density",
    "parse_spec",
    "PRESETS",
]


class Family(enum.Enum):
    NORMAL = "normal"
    EXPONENTIAL = "exponential"
    UNIFORM = "uniform"
    GAMMA = "gamma"
    CHISQUARE = "chisquare"
    LAPLACE = "laplace"
    STUDENT_T = "student_t"


_ARITY = {
    Family.NORMAL: 2,
    Family.EXPONENTIAL: 1,
    Family.UNIFORM: 2,
    Family.GAMMA: 2,
    Family.CHISQUARE: 1,
    Family.LAPLACE: 2,
    Family.STUDENT_T: 1,
}


def _fmt(x):
    # shortest repr that round-trips, without a trailing ".0"
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


@dataclass(frozen=True)
class DistributionSpec:
    family: Family
    params: tuple

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _ARITY[fam]:
            raise ValueError(f"{fam.value} takes {_ARITY[fam]} parameter(s), got {len(params)}")
        if not all(math.isfinite(p) for p in params):
            raise ValueError(f"non-finite parameter in {params}")
        if fam is Family.NORMAL and params[1] <= 0:
            raise ValueError("normal variance must be positive")
        if fam is Family.UNIFORM and not params[0] < params[1]:
            raise ValueError("uniform needs a < b")
        if fam is Family.LAPLACE and params[1] <= 0:
            raise ValueError("laplace scale must be positive")
        if fam in (Family.EXPONENTIAL, Family.CHISQUARE, Family.STUDENT_T) and params[0] <= 0:
            raise ValueError(f"{fam.value} parameter must be positive")
        if fam is Family.GAMMA and min(params) <= 0:
            raise ValueError("gamma shape and rate must be positive")

    @property
    def label(self):
        """Text form accepted by :func:`parse_spec`, e.g. ``gamma(2,1)``."""
        return f"{self.family.value}({','.join(_fmt(p) for p in self.params)})"

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    skewness: float | None
    kurtosis: float | None
    eighth_moment_finite: bool

    @property
    def has_shape_moments(self):
        return self.skewness is not None and self.kurtosis is not None


def moments(spec):
    """Closed-form mean, variance, skewness and kurtosis.

    Undefined quantities come back as ``None`` (Student-t with few degrees of
    freedom); an infinite variance raises, since nothing downstream can use it.
    """
    fam, p = spec.family, spec.params
    if fam is Family.NORMAL:
        return MomentSummary(p[0], p[1], 0.0, 3.0, True)
    if fam is Family.EXPONENTIAL:
        return MomentSummary(1.0 / p[0], 1.0 / p[0] ** 2, 2.0, 9.0, True)
    if fam is Family.UNIFORM:
        a, b = p
        return MomentSummary(0.5 * (a + b), (b - a) ** 2 / 12.0, 0.0, 9.0 / 5.0, True)
    if fam is Family.GAMMA:
        k, rate = p
        return MomentSummary(k / rate, k / rate**2, 2.0 / math.sqrt(k), 3.0 + 6.0 / k, True)
    if fam is Family.CHISQUARE:
        nu = p[0]
        return MomentSummary(nu, 2.0 * nu, math.sqrt(8.0 / nu), 3.0 + 12.0 / nu, True)
    if fam is Family.LAPLACE:
        return MomentSummary(p[0], 2.0 * p[1] ** 2, 0.0, 6.0, True)
    nu = p[0]
    if nu <= 1:
        raise ValueError(f"t({_fmt(nu)}) has no mean")
    if nu <= 2:
        raise ValueError(f"t({_fmt(nu)}) has infinite variance")
    skew = 0.0 if nu > 3 else None
    kurt = 3.0 + 6.0 / (nu - 4.0) if nu > 4 else None
    return MomentSummary(0.0, nu / (nu - 2.0), skew, kurt, nu > 8)


def density(spec, y):
    """Lebesgue density at ``y``; zero off the support. Accepts arrays."""
    fam, p = spec.family, spec.params
    y = np.asarray(y, dtype=np.float64)
    if fam is Family.NORMAL:
        mu, s2 = p
        out = np.exp(-0.5 * (y - mu) ** 2 / s2) / math.sqrt(2.0 * math.pi * s2)
    elif fam is Family.EXPONENTIAL:
        lam = p[0]
        out = np.where(y > 0, lam * np.exp(-lam * np.maximum(y, 0.0)), 0.0)
    elif fam is Family.UNIFORM:
        a, b = p
        out = np.where((y >= a) & (y <= b), 1.0 / (b - a), 0.0)
    elif fam in (Family.GAMMA, Family.CHISQUARE):
        k, rate = p if fam is Family.GAMMA else (0.5 * p[0], 0.5)
        pos = y > 0
        ys = np.where(pos, y, 1.0)
        logf = k * math.log(rate) - math.lgamma(k) + (k - 1.0) * np.log(ys) - rate * ys
        out = np.where(pos, np.exp(logf), 0.0)
    elif fam is Family.LAPLACE:
        mu, b = p
        out = np.exp(-np.abs(y - mu) / b) / (2.0 * b)
    else:
        nu = p[0]
        logc = math.lgamma(0.5 * (nu + 1)) - math.lgamma(0.5 * nu) - 0.5 * math.log(nu * math.pi)
        out = np.exp(logc - 0.5 * (nu + 1) * np.log1p(y * y / nu))
    return float(out) if out.ndim == 0 else out


# -- samplers -------------------------------------------------------------
#
# Each sampler maps a RandomStream and a variate count to an array of shape
# (n,) for a single stream or (R, n) for a block. Slot assignments keep the
# uniforms used by different building blocks disjoint.


def _box_muller(stream, n, slot=0):
    """Standard normals using both halves of each Box-Muller pair."""
    pairs = (n + 1) // 2
    idx = np.arange(pairs)
    u1 = stream.uniform(counter(idx, 0, slot))
    u2 = stream.uniform(counter(idx, 0, slot + 1))
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * math.pi * u2
    z = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
    return z.reshape(z.shape[:-2] + (2 * pairs,))[..., :n]


def _standard_gamma(stream, n, shape, slot=0):
    """Gamma(shape, 1) by Marsaglia and Tsang's squeeze-free rejection.

    Uses slots ``slot .. slot + 3``. For shape < 1 the usual boost
    Gamma(shape + 1) * U^(1/shape) is applied with the fourth slot.
    """
    k = shape + 1.0 if shape < 1.0 else shape
    d = k - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)

    reps = stream.replicates
    R = reps.size
    out = np.empty((R, n))
    rows, cols = np.divmod(np.arange(R * n), n)
    attempt = 0
    while rows.size:
        if attempt >= 1 << 16:
            raise RuntimeError("gamma sampler exceeded its attempt budget")
        u1 = stream.uniform(counter(cols, attempt, slot), rows=rows)
        u2 = stream.uniform(counter(cols, attempt, slot + 1), rows=rows)
        ua = stream.uniform(counter(cols, attempt, slot + 2), rows=rows)
        x = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * math.pi * u2)
        v = 1.0 + c * x
        ok = v > 0
        v3 = np.where(ok, v * v * v, 1.0)
        ok &= np.log(ua) < 0.5 * x * x + d - d * v3 + d * np.log(v3)
        out[rows[ok], cols[ok]] = d * v3[ok]
        rows, cols = rows[~ok], cols[~ok]
        attempt += 1

    if shape < 1.0:
        ub = stream.uniform(counter(np.arange(n), 0, slot + 3))
        out *= (ub if ub.ndim == 2 else ub[None, :]) ** (1.0 / shape)
    return out if stream.is_block else out[0]


def sample(spec, n, stream):
    """Draw ``n`` i.i.d. values from ``spec`` using ``stream``.

    Deterministic in (stream.seed, replicate, n): draw i of a replicate
    depends only on i, never on how many replicates are sampled together.
    """
    if n < 1:
        raise ValueError("sample size must be >= 1")
    if not isinstance(stream, RandomStream):
        raise TypeError("stream must be a RandomStream")
    out = np.broadcast_to(_sample_rows(spec, n, stream), (stream.replicates.size, n))
    return np.array(out if stream.is_block else out[0])


def _sample_rows(spec, n, stream):
    fam, p = spec.family, spec.params
    idx = np.arange(n)
    if fam is Family.NORMAL:
        return p[0] + math.sqrt(p[1]) * _box_muller(stream, n)
    if fam is Family.EXPONENTIAL:
        return -np.log(stream.uniform(counter(idx))) / p[0]
    if fam is Family.UNIFORM:
        a, b = p
        return a + (b - a) * stream.uniform(counter(idx))
    if fam is Family.GAMMA:
        return _standard_gamma(stream, n, p[0]) / p[1]
    if fam is Family.CHISQUARE:
        return 2.0 * _standard_gamma(stream, n, 0.5 * p[0])
    if fam is Family.LAPLACE:
        mu, b = p
        u = stream.uniform(counter(idx)) - 0.5
        return mu - b * np.sign(u) * np.log1p(-2.0 * np.abs(u))
    nu = p[0]
    z = _box_muller(stream, n, slot=0)
    chi2 = 2.0 * _standard_gamma(stream, n, 0.5 * nu, slot=2)
    return z / np.sqrt(chi2 / nu)


# -- text grammar ---------------------------------------------------------

_ALIASES = {
    "normal": Family.NORMAL, "norm": Family.NORMAL, "n": Family.NORMAL, "gaussian": Family.NORMAL,
    "exponential": Family.EXPONENTIAL, "exp": Family.EXPONENTIAL,
    "uniform": Family.UNIFORM, "unif": Family.UNIFORM,
    "gamma": Family.GAMMA,
    "chisquare": Family.CHISQUARE, "chisq": Family.CHISQUARE, "chi2": Family.CHISQUARE,
    "laplace": Family.LAPLACE, "lap": Family.LAPLACE,
    "student_t": Family.STUDENT_T, "t": Family.STUDENT_T, "student": Family.STUDENT_T,
}

PRESETS = {
    "normal": DistributionSpec(Family.NORMAL, (0.0, 1.0)),
    "exponential": DistributionSpec(Family.EXPONENTIAL, (1.0,)),
    "uniform": DistributionSpec(Family.UNIFORM, (0.0, 1.0)),
    "gamma": DistributionSpec(Family.GAMMA, (2.0, 1.0)),
    "chisquare": DistributionSpec(Family.CHISQUARE, (1.0,)),
    # matched mean 2, variance 2, kurtosis 6; skewness sqrt(2) vs 0
    "skew-pair-gamma": DistributionSpec(Family.GAMMA, (2.0, 1.0)),
    "skew-pair-laplace": DistributionSpec(Family.LAPLACE, (2.0, 1.0)),
    # matched mean 0, variance 5/3, skewness 0; kurtosis 3 vs 9
    "kurtosis-pair-normal": DistributionSpec(Family.NORMAL, (0.0, 5.0 / 3.0)),
    "kurtosis-pair-t": DistributionSpec(Family.STUDENT_T, (5.0,)),
}

_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_\-]*)\s*(?:\((.*)\))?\s*$")


class SpecParseError(ValueError):
    def __init__(self, text, token, reason):
        self.text = text
        self.token = token
        super().__init__(f"cannot parse distribution {text!r}: {reason} at {token!r}")


def parse_spec(text):
    """Parse ``family(p1,p2,...)`` (case-insensitive) or a preset name.

    >>> parse_spec("Gamma(2, 1)").label
    'gamma(2,1)'
    """
    m = _SPEC_RE.match(text)
    if m is None:
        raise SpecParseError(text, text, "expected name(p1,...)")
    name, args = m.group(1).lower(), m.group(2)
    if args is None:
        if name in PRESETS:
            return PRESETS[name]
        raise SpecParseError(text, m.group(1), "unknown preset")
    fam = _ALIASES.get(name)
    if fam is None:
        raise SpecParseError(text, m.group(1), "unknown family")
    params = []
    for tok in args.split(","):
        try:
            params.append(float(tok))
        except ValueError:
            raise SpecParseError(text, tok.strip(), "not a number") from None
    if len(params) != _ARITY[fam]:
        raise SpecParseError(text, args, f"{fam.value} takes {_ARITY[fam]} parameter(s)")
    try:
        return DistributionSpec(fam, tuple(params))
    except ValueError as exc:
        raise SpecParseError(text, args, str(exc)) from None

