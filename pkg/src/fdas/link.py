"""Per-link SINR, outage and throughput arithmetic.

Noise power is normalized to one, so transmit powers enter as SNRs.  All
functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "LinkBudget",
    "outage_capacity",
    "outage_indicator",
    "sinr_dl",
    "sinr_ul",
    "sum_throughput",
]


@dataclass(frozen=True)
class LinkBudget:
    """Linear-scale link parameters.

    gamma0_dl, gamma0_ul : DL and UL transmit SNR (power over noise).
    eta : residual self-interference factor after cancellation, in [0, 1].
    gamma_t_dl, gamma_t_ul : SINR outage thresholds.
    """

    gamma0_dl: float
    gamma0_ul: float
    eta: float
    gamma_t_dl: float
    gamma_t_ul: float

    def __post_init__(self):
        for name in ("gamma0_dl", "gamma0_ul", "eta", "gamma_t_dl", "gamma_t_ul"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise InvalidArgumentError(f"{name} must be finite and non-negative, got {v!r}")
        if self.eta > 1.0:
            raise InvalidArgumentError(f"eta must not exceed 1, got {self.eta!r}")

    @classmethod
    def symmetric(cls, gamma0, eta, gamma_t_dl, gamma_t_ul=None):
        """Budget with equal DL/UL SNR, the setting used throughout the simulations."""
        if gamma_t_ul is None:
            gamma_t_ul = gamma_t_dl
        return cls(gamma0, gamma0, eta, gamma_t_dl, gamma_t_ul)


def _nonneg(name, x):
    arr = np.asarray(x, dtype=np.float64)
    if np.any(~(arr >= 0.0)):
        raise InvalidArgumentError(f"{name} must be non-negative")
    return arr


def sinr_dl(budget, h):
    """DL SINR ``gamma0_dl * h``; the DL user sees no self-interference."""
    out = budget.gamma0_dl * _nonneg("h", h)
    return out if out.ndim else float(out)


def sinr_ul(budget, g, alpha):
    """UL SINR ``gamma0_ul * g / (1 + eta * gamma0_dl * alpha)``."""
    g = _nonneg("g", g)
    alpha = _nonneg("alpha", alpha)
    out = budget.gamma0_ul * g / (1.0 + budget.eta * budget.gamma0_dl * alpha)
    return out if out.ndim else float(out)


def outage_indicator(gamma, gamma_t):
    """True where the SINR falls strictly below the threshold."""
    out = np.asarray(gamma) < np.asarray(gamma_t)
    return out if out.ndim else bool(out)


def outage_capacity(gamma_t):
    """Rate ``log2(1 + gamma_t)`` in bits/s/Hz carried when not in outage."""
    if not gamma_t >= 0.0:
        raise InvalidArgumentError(f"threshold must be non-negative, got {gamma_t!r}")
    return math.log2(1.0 + gamma_t)


def sum_throughput(c_d, c_u, p_od, p_ou):
    """``c_d * (1 - p_od) + c_u * (1 - p_ou)``."""
    if not (c_d >= 0.0 and c_u >= 0.0):
        raise InvalidArgumentError("rates must be non-negative")
    for name, p in (("p_od", p_od), ("p_ou", p_ou)):
        if not 0.0 <= p <= 1.0:
            raise InvalidArgumentError(f"{name} must lie in [0, 1], got {p!r}")
    return c_d * (1.0 - p_od) + c_u * (1.0 - p_ou)
