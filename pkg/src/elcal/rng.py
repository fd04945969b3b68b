"""Counter-based uniforms keyed by (seed, replicate, counter).

Every uniform is a pure function of its three coordinates, so a replicate's
draws never depend on how replicates are chunked or scheduled. The hash is
two rounds of 64-bit finalizers (SplitMix64 and MurmurHash3 fmix64), which
are bijections; distinct counters inside one replicate never collide.

Counters are laid out as ``variate << 20 | attempt << 4 | slot`` so that a
sampler can address the k-th rejection attempt for variate i directly.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["RandomStream", "counter", "counter_uniform", "derive_seed", "SLOT_BITS", "ATTEMPT_BITS"]

SLOT_BITS = 4
ATTEMPT_BITS = 16
_VARIATE_SHIFT = SLOT_BITS + ATTEMPT_BITS

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_GOLDEN2 = np.uint64(0xD1B54A32D192ED03)
_SEED_SALT = np.uint64(0x5851F42D4C957F2D)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_F1 = np.uint64(0xFF51AFD7ED558CCD)
_F2 = np.uint64(0xC4CEB9FE1A85EC53)
_S11 = np.uint64(11)
_TWO_M53 = 2.0 ** -53
_MASK64 = (1 << 64) - 1


def _splitmix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _fmix(z):
    z = (z ^ (z >> np.uint64(33))) * _F1
    z = (z ^ (z >> np.uint64(33))) * _F2
    return z ^ (z >> np.uint64(33))


def _as_u64(x):
    return np.asarray(x).astype(np.uint64, copy=False)


def _seed_key(seed):
    with np.errstate(over="ignore"):
        return _splitmix(np.array([int(seed) & _MASK64], dtype=np.uint64) ^ _SEED_SALT)[0]


def _replicate_keys(seed, replicates):
    with np.errstate(over="ignore"):
        r = _as_u64(replicates) + np.uint64(1)
        return _fmix(_seed_key(seed) + r * _GOLDEN)


def counter(variate, attempt=0, slot=0):
    """Pack (variate, attempt, slot) into a single uint64 counter."""
    v = _as_u64(variate)
    return (v << np.uint64(_VARIATE_SHIFT)) | (_as_u64(attempt) << np.uint64(SLOT_BITS)) | _as_u64(slot)


def counter_uniform(seed, replicates, counters):
    """Uniforms on the open interval (0, 1); arguments broadcast."""
    keys = _replicate_keys(seed, replicates)
    with np.errstate(over="ignore"):
        c = (_as_u64(counters) + np.uint64(1)) * _GOLDEN2
        bits = _splitmix(keys ^ _fmix(c))
    return ((bits >> _S11).astype(np.float64) + 0.5) * _TWO_M53


def derive_seed(seed, *labels):
    """Child seed for a sub-run (e.g. one sample size of a curve)."""
    with np.errstate(over="ignore"):
        z = np.array([int(seed) & _MASK64], dtype=np.uint64)
        for lab in labels:
            z = _fmix(_splitmix(z ^ _SEED_SALT) + np.uint64(int(lab) & _MASK64) * _GOLDEN)
    return int(z[0])


@dataclass(frozen=True)
class RandomStream:
    """Random source for one replicate, or a stack of replicates.

    ``replicate_index`` is either an int (one stream, samplers return 1-d
    arrays) or a 1-d integer array (one row per replicate).
    """

    seed: int
    replicate_index: object = 0

    @property
    def is_block(self):
        return np.ndim(self.replicate_index) > 0

    @property
    def replicates(self):
        return np.atleast_1d(np.asarray(self.replicate_index, dtype=np.uint64))

    def uniform(self, counters, rows=None):
        """Uniforms for the given counters.

        With ``rows=None`` the result has shape ``(R,) + counters.shape``.
        Otherwise ``rows`` selects replicates elementwise (same shape as
        ``counters``), which is what rejection samplers need.
        """
        counters = np.asarray(counters, dtype=np.uint64)
        reps = self.replicates
        if rows is None:
            return counter_uniform(self.seed, reps.reshape((-1,) + (1,) * counters.ndim), counters)
        return counter_uniform(self.seed, reps[np.asarray(rows)], counters)
