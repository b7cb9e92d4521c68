"""Closed-form outage probabilities for MM-AS and LI-AS.

These hold for i.i.d. unit-mean exponential power gains and serve as oracles
for the Monte Carlo engine.  No closed form is offered for the
multi-objective criteria.

* MM-AS DL: ``h`` is the maximum of ``m_t`` gains.
* MM-AS UL: ``g`` is the maximum of ``m_r`` gains and ``alpha`` is an
  unselected gain, independent of ``g``.
* LI-AS: ``h`` and ``g`` are unselected gains and ``alpha`` is the minimum of
  ``m_t * m_r`` gains, itself exponential with rate ``m_t * m_r``.
"""

from __future__ import annotations

import math

from scipy import integrate

from .errors import InvalidArgumentError

__all__ = [
    "ALTERNATING_SUM_MAX_MR",
    "li_as_outages",
    "mm_as_dl_outage",
    "mm_as_ul_outage",
]

# Largest m_r evaluated by the alternating binomial sum.  The largest term is
# C(16, 8) = 12870, so cancellation costs at most ~1e-12 absolute accuracy.
# Beyond this the probability is integrated numerically instead.
ALTERNATING_SUM_MAX_MR = 16


def _check_positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0.0):
            raise InvalidArgumentError(f"{name} must be positive and finite, got {v!r}")


def _check_nonneg(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v >= 0.0):
            raise InvalidArgumentError(f"{name} must be non-negative and finite, got {v!r}")


def _check_count(**kw):
    for name, v in kw.items():
        if int(v) != v or v < 1:
            raise InvalidArgumentError(f"{name} must be a positive integer, got {v!r}")


def mm_as_dl_outage(gamma0, gamma_t, m_t):
    """``(1 - exp(-gamma_t / gamma0)) ** m_t``."""
    _check_positive(gamma0=gamma0)
    _check_nonneg(gamma_t=gamma_t)
    _check_count(m_t=m_t)
    return (-math.expm1(-gamma_t / gamma0)) ** m_t


def mm_as_ul_outage(gamma0, gamma_t, eta, m_r):
    """UL outage under MM-AS.

    Expanding ``(1 - exp(-x))**m_r`` binomially and averaging over the
    exponential interference gain gives::

        sum_k C(m_r, k) (-1)**k exp(-k * gamma_t / gamma0) / (1 + k * gamma_t * eta)
    """
    _check_positive(gamma0=gamma0)
    _check_nonneg(gamma_t=gamma_t, eta=eta)
    _check_count(m_r=m_r)
    x0 = gamma_t / gamma0
    if m_r <= ALTERNATING_SUM_MAX_MR:
        terms = [math.comb(m_r, k) * (-1) ** k * math.exp(-k * x0) / (1.0 + k * gamma_t * eta)
                 for k in range(m_r + 1)]
        p = math.fsum(terms)
    else:
        # P(g_max < x0 + gamma_t * eta * alpha) averaged over alpha ~ Exp(1)
        slope = gamma_t * eta
        p, _ = integrate.quad(
            lambda a: (-math.expm1(-(x0 + slope * a))) ** m_r * math.exp(-a),
            0.0, math.inf, epsabs=1e-13, epsrel=1e-11, limit=200)
    return min(1.0, max(0.0, p))


def li_as_outages(gamma0, gamma_t_dl, gamma_t_ul, eta, m_t, m_r):
    """DL and UL outage under LI-AS, returned as ``(p_od, p_ou)``."""
    _check_positive(gamma0=gamma0)
    _check_nonneg(gamma_t_dl=gamma_t_dl, gamma_t_ul=gamma_t_ul, eta=eta)
    _check_count(m_t=m_t, m_r=m_r)
    n = m_t * m_r
    p_od = -math.expm1(-gamma_t_dl / gamma0)
    p_ou = 1.0 - math.exp(-gamma_t_ul / gamma0) * n / (n + gamma_t_ul * eta)
    return p_od, p_ou
