"""Rayleigh channel realizations for a full-duplex base station.

Every power gain is an independent unit-mean exponential variate.  Random
numbers come from a counter-based generator: the uniform used for slot ``k``
of trial ``t`` is a pure function of ``(seed, t, k)``.  A single trial can be
drawn through :func:`trial_stream` / :func:`sample_channel`, and any range of
trials through :func:`sample_batch`; both produce bit-identical gains, so the
way trials are split across workers never changes a result.

Slot layout within a trial: ``h[0..m_t)``, then ``g[0..m_r)``, then the
interference matrix ``a`` in row-major (receive-major) order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "ChannelBatch",
    "ChannelRealization",
    "TrialStream",
    "db_to_linear",
    "exp_inverse_cdf",
    "sample_batch",
    "sample_channel",
    "slots_per_trial",
    "trial_stream",
    "trial_uniforms",
]

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def db_to_linear(x_db):
    """Convert a decibel value to a linear ratio, ``10 ** (x_db / 10)``."""
    x = float(x_db)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"dB value must be finite, got {x_db!r}")
    return 10.0 ** (x / 10.0)


def exp_inverse_cdf(u):
    """Map uniforms on (0, 1] to unit-mean exponential variates via ``-ln(u)``."""
    u = np.asarray(u, dtype=np.float64)
    if np.any((u <= 0.0) | (u > 1.0)):
        raise InvalidArgumentError("uniform draws must lie in (0, 1]")
    return -np.log(u)


def _mix64(x):
    # splitmix64 finalizer; a bijection on uint64
    x = x ^ (x >> np.uint64(30))
    x = x * _MUL1
    x = x ^ (x >> np.uint64(27))
    x = x * _MUL2
    return x ^ (x >> np.uint64(31))


def _seed_key(seed):
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise InvalidArgumentError(f"seed must be a 64-bit unsigned integer, got {seed}")
    with np.errstate(over="ignore"):
        return _mix64(np.uint64(seed) + _GOLDEN)


def trial_uniforms(seed, trials, n_slots):
    """Uniforms in the open interval (0, 1) for each (trial, slot) pair.

    Parameters
    ----------
    seed : int
        64-bit master seed.
    trials : array_like of int
        Trial indices, shape ``(n,)``.
    n_slots : int
        Number of slots per trial.

    Returns
    -------
    ndarray, shape ``(n, n_slots)``
    """
    t = np.asarray(trials, dtype=np.uint64).reshape(-1, 1)
    k = np.arange(n_slots, dtype=np.uint64).reshape(1, -1)
    key = _seed_key(seed)
    with np.errstate(over="ignore"):
        z = _mix64(key + (t + np.uint64(1)) * _GOLDEN)
        z = _mix64(z + (k + np.uint64(1)) * _GOLDEN)
    # top 53 bits, centred in their cell so 0 and 1 are never produced
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


class TrialStream:
    """Sequential view over the counter-based uniforms of one trial."""

    def __init__(self, seed, trial):
        if int(trial) < 0:
            raise InvalidArgumentError("trial index must be non-negative")
        _seed_key(seed)
        self.seed = int(seed)
        self.trial = int(trial)
        self._next = 0

    def uniform(self, size):
        """Return the next ``size`` uniforms of this trial."""
        block = trial_uniforms(self.seed, [self.trial], self._next + size)[0, self._next:]
        self._next += size
        return block

    def __repr__(self):
        return f"TrialStream(seed={self.seed}, trial={self.trial}, position={self._next})"


def trial_stream(seed, trial):
    """Random stream for trial ``trial`` under master seed ``seed``."""
    return TrialStream(seed, trial)


def slots_per_trial(m_t, m_r):
    return m_t + m_r + m_t * m_r


def _check_counts(m_t, m_r):
    if int(m_t) != m_t or int(m_r) != m_r or m_t < 1 or m_r < 1:
        raise InvalidArgumentError(
            f"antenna counts must be positive integers, got m_t={m_t}, m_r={m_r}")


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of DL gains ``h``, UL gains ``g`` and interference gains ``a``.

    ``a[i, j]`` couples transmit antenna ``j`` into receive antenna ``i``.
    Indices are zero-based here; :class:`fdas.selection.Selection` reports
    them the same way.
    """

    h: np.ndarray
    g: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.float64)
        g = np.asarray(self.g, dtype=np.float64)
        a = np.asarray(self.a, dtype=np.float64)
        if h.ndim != 1 or g.ndim != 1 or h.size == 0 or g.size == 0:
            raise InvalidArgumentError("h and g must be non-empty vectors")
        if a.shape != (g.size, h.size):
            raise InvalidArgumentError(
                f"a must have shape (m_r, m_t) = {(g.size, h.size)}, got {a.shape}")
        for name, arr in (("h", h), ("g", g), ("a", a)):
            if not np.all(np.isfinite(arr)) or np.any(arr < 0):
                raise InvalidArgumentError(f"{name} must hold finite non-negative gains")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "a", a)

    @property
    def m_t(self):
        return self.h.size

    @property
    def m_r(self):
        return self.g.size

    def as_batch(self):
        return ChannelBatch(self.h[None, :], self.g[None, :], self.a[None, :, :])


@dataclass(frozen=True)
class ChannelBatch:
    """A stack of realizations: ``h`` (n, m_t), ``g`` (n, m_r), ``a`` (n, m_r, m_t)."""

    h: np.ndarray
    g: np.ndarray
    a: np.ndarray

    def __len__(self):
        return self.h.shape[0]

    @property
    def m_t(self):
        return self.h.shape[1]

    @property
    def m_r(self):
        return self.g.shape[1]

    def __getitem__(self, idx):
        return ChannelRealization(self.h[idx], self.g[idx], self.a[idx])


def sample_channel(stream, m_t, m_r):
    """Draw one :class:`ChannelRealization` from ``stream``."""
    _check_counts(m_t, m_r)
    x = exp_inverse_cdf(stream.uniform(slots_per_trial(m_t, m_r)))
    return ChannelRealization(x[:m_t], x[m_t:m_t + m_r], x[m_t + m_r:].reshape(m_r, m_t))


def sample_batch(seed, start, stop, m_t, m_r):
    """Draw the realizations of trials ``start .. stop-1`` in one vectorized pass."""
    _check_counts(m_t, m_r)
    if not 0 <= start <= stop:
        raise InvalidArgumentError(f"invalid trial range [{start}, {stop})")
    x = -np.log(trial_uniforms(seed, np.arange(start, stop), slots_per_trial(m_t, m_r)))
    n = stop - start
    return ChannelBatch(x[:, :m_t], x[:, m_t:m_t + m_r], x[:, m_t + m_r:].reshape(n, m_r, m_t))
