"""Antenna-pair selection criteria.

Each criterion picks one receive antenna ``i`` and one transmit antenna ``j``
from a channel realization:

* MM-AS: strongest DL gain and strongest UL gain, chosen independently.
* LI-AS: smallest entry of the interference matrix.
* MO-WS: weighted sum ``-(1-w)/2 * h - (1-w)/2 * g + w * alpha``, minimized
  over all pairs.
* MO-EWC: exponential weighted criterion
  ``sum_k (exp(p * w_k) - 1) * exp(p * f_k)`` over the same three objectives.

The multi-objective scores are evaluated on a configurable gain scale.  With
``scale="amplitude"`` (the default) the objectives use envelope gains, i.e.
the square roots of the power gains; ``scale="power"`` uses the power gains
as stored.  MM-AS and LI-AS pick the same pair on either scale because the
square root is monotone; only their reported ``objective_value`` follows the
scale.

Ties are broken by the lowest receive index, then the lowest transmit index.
All indices are zero-based.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "SCALES",
    "Selection",
    "Strategy",
    "StrategyKind",
    "empirical_weight",
    "scale_gains",
    "scores",
    "select",
    "select_batch",
    "select_li",
    "select_mm",
    "select_mo_ewc",
    "select_mo_ws",
]

SCALES = ("amplitude", "power")


class StrategyKind(enum.Enum):
    MM_AS = "MM-AS"
    LI_AS = "LI-AS"
    MO_WS = "MO-WS"
    MO_EWC = "MO-EWC"


def _check_weight(w):
    if w is None or not (0.0 <= w <= 1.0):
        raise InvalidArgumentError(f"weight w must lie in [0, 1], got {w!r}")


def _check_sharpness(p):
    if p is None or not (math.isfinite(p) and p > 0.0):
        raise InvalidArgumentError(f"sharpness p must be a positive finite number, got {p!r}")


def _check_scale(scale):
    if scale not in SCALES:
        raise InvalidArgumentError(f"scale must be one of {SCALES}, got {scale!r}")


@dataclass(frozen=True)
class Strategy:
    """Which criterion selects the antennas, and its parameters.

    ``w`` is only meaningful for the multi-objective kinds and ``p`` only for
    MO-EWC.  ``w=None`` on a multi-objective kind means the weight is chosen
    later by the caller (see :func:`fdas.montecarlo.sweep_snr`).
    """

    kind: StrategyKind
    w: float | None = None
    p: float = 1.0
    scale: str = "amplitude"

    def __post_init__(self):
        if not isinstance(self.kind, StrategyKind):
            raise InvalidArgumentError(f"unknown strategy kind {self.kind!r}")
        _check_scale(self.scale)
        if self.kind in (StrategyKind.MO_WS, StrategyKind.MO_EWC) and self.w is not None:
            _check_weight(self.w)
        if self.kind is StrategyKind.MO_EWC:
            _check_sharpness(self.p)

    @classmethod
    def mm(cls, scale="amplitude"):
        return cls(StrategyKind.MM_AS, scale=scale)

    @classmethod
    def li(cls, scale="amplitude"):
        return cls(StrategyKind.LI_AS, scale=scale)

    @classmethod
    def mo_ws(cls, w=None, scale="amplitude"):
        return cls(StrategyKind.MO_WS, w=w, scale=scale)

    @classmethod
    def mo_ewc(cls, w=None, p=1.0, scale="amplitude"):
        return cls(StrategyKind.MO_EWC, w=w, p=p, scale=scale)

    @property
    def label(self):
        return self.kind.value

    @property
    def is_multi_objective(self):
        return self.kind in (StrategyKind.MO_WS, StrategyKind.MO_EWC)

    def with_weight(self, w):
        return Strategy(self.kind, w=w, p=self.p, scale=self.scale)


@dataclass(frozen=True)
class Selection:
    rx_index: int
    tx_index: int
    h: float
    g: float
    alpha: float
    objective_value: float


def _scaled(x, scale):
    return np.sqrt(x) if scale == "amplitude" else x


def scores(h, g, a, strategy, prescaled=False):
    """Score of every antenna pair; the selected pair minimizes it.

    ``h`` has shape (n, m_t), ``g`` (n, m_r) and ``a`` (n, m_r, m_t).  Returns
    an array of shape (n, m_r, m_t).  Pass ``prescaled=True`` when the gains
    are already on ``strategy.scale``.
    """
    kind = strategy.kind
    if prescaled:
        hs, gs, as_ = h, g, a
    else:
        hs, gs, as_ = (_scaled(x, strategy.scale) for x in (h, g, a))
    if kind is StrategyKind.MM_AS:
        return -(hs[:, None, :] + gs[:, :, None]) / 2.0
    if kind is StrategyKind.LI_AS:
        return as_.copy()
    w = strategy.w
    _check_weight(w)
    if kind is StrategyKind.MO_WS:
        c = (1.0 - w) / 2.0
        return -c * hs[:, None, :] - c * gs[:, :, None] + w * as_
    p = strategy.p
    c_direct = math.expm1(p * (1.0 - w) / 2.0)
    c_interf = math.expm1(p * w)
    direct = np.exp(-p * hs)[:, None, :] + np.exp(-p * gs)[:, :, None]
    return c_direct * direct + c_interf * np.exp(p * as_)


def scale_gains(h, g, a, scale):
    """Gains converted to ``scale``, for repeated :func:`select_batch` calls."""
    _check_scale(scale)
    return _scaled(h, scale), _scaled(g, scale), _scaled(a, scale)


def select_batch(h, g, a, strategy, prescaled=False):
    """Selected ``(rx, tx)`` index arrays for a stack of realizations."""
    n, m_r, m_t = a.shape
    if strategy.kind is StrategyKind.MM_AS:
        # independent maxima; np.argmax returns the first (lowest) index on ties
        return np.argmax(g, axis=1), np.argmax(h, axis=1)
    if strategy.kind is StrategyKind.LI_AS:
        flat = np.argmin(a.reshape(n, -1), axis=1)
    else:
        flat = np.argmin(scores(h, g, a, strategy, prescaled).reshape(n, -1), axis=1)
    return flat // m_t, flat % m_t


def select(ch, strategy):
    """Apply ``strategy`` to one :class:`~fdas.channel.ChannelRealization`."""
    b = ch.as_batch()
    rx, tx = select_batch(b.h, b.g, b.a, strategy)
    i, j = int(rx[0]), int(tx[0])
    value = float(scores(b.h, b.g, b.a, strategy)[0, i, j])
    return Selection(i, j, float(ch.h[j]), float(ch.g[i]), float(ch.a[i, j]), value)


def select_mm(ch, scale="amplitude"):
    """Max-max selection; ``objective_value`` is ``-(h + g) / 2`` on ``scale``."""
    return select(ch, Strategy.mm(scale))


def select_li(ch, scale="amplitude"):
    """Least-interference selection; ``objective_value`` is ``alpha`` on ``scale``."""
    return select(ch, Strategy.li(scale))


def select_mo_ws(ch, w, scale="amplitude"):
    _check_weight(w)
    return select(ch, Strategy.mo_ws(w, scale))


def select_mo_ewc(ch, w, p=1.0, scale="amplitude"):
    _check_weight(w)
    _check_sharpness(p)
    return select(ch, Strategy.mo_ewc(w, p, scale))


def empirical_weight(eta_linear, snr_db):
    """Rule-of-thumb weight for MO-WS, clamped to [0, 1].

    ``eta_linear`` is the self-interference cancellation factor on a linear
    scale and ``snr_db`` the average SNR in dB::

        w = 0.5 * eta ** 0.301 + 0.02 * snr_db - 0.3
    """
    if not eta_linear > 0.0 or not math.isfinite(eta_linear):
        raise InvalidArgumentError(f"eta must be positive and finite, got {eta_linear!r}")
    if not math.isfinite(snr_db):
        raise InvalidArgumentError(f"snr_db must be finite, got {snr_db!r}")
    raw = 0.5 * eta_linear**0.301 + 0.02 * snr_db - 0.3
    return min(1.0, max(0.0, raw))
