"""Seeded Monte Carlo estimation of outage and sum throughput.

Trial ``t`` always sees the realization derived from ``(seed, t)``, whatever
the strategy, grid point or worker count.  Trials are processed in fixed
chunks; each chunk is sampled once and every requested (strategy, link
budget) job is evaluated on it, so competing strategies are compared on
common random numbers.  Outages are accumulated as integer counts and
throughput is formed from the final counts, which keeps results
bit-identical across worker counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import db_to_linear, sample_batch
from .errors import ConfigError, InvalidArgumentError
from .link import LinkBudget, outage_capacity, outage_indicator, sinr_dl, sinr_ul
from .selection import Strategy, StrategyKind, empirical_weight, scale_gains, select_batch

__all__ = [
    "CHUNK_SIZE",
    "Comparison",
    "SimConfig",
    "SweepRow",
    "ThroughputEstimate",
    "compare",
    "default_weight_grid",
    "run_trials",
    "sweep_snr",
    "sweep_weight",
    "tune_weight",
]

CHUNK_SIZE = 8192
DEFAULT_SAMPLES = 100_000


def default_weight_grid(step=0.05):
    n = int(round(1.0 / step))
    return [round(k * step, 10) for k in range(n + 1)]


@dataclass(frozen=True)
class SimConfig:
    """One simulation point.  Powers, thresholds and ``eta`` are given in dB."""

    m_t: int = 4
    m_r: int = 4
    snr_db: float = 15.0
    eta_db: float = -10.0
    gamma_t_dl_db: float = 10.0
    gamma_t_ul_db: float = 10.0
    n_samples: int = DEFAULT_SAMPLES
    seed: int = 0
    strategy: Strategy = field(default_factory=Strategy.mm)

    def __post_init__(self):
        problems = {}
        for name in ("m_t", "m_r"):
            v = getattr(self, name)
            if not _is_int(v) or v < 1:
                problems[name] = f"must be an integer >= 1, got {v!r}"
        if not _is_int(self.n_samples) or self.n_samples < 1:
            problems["samples"] = f"must be an integer >= 1, got {self.n_samples!r}"
        if not _is_int(self.seed) or not 0 <= self.seed < 2**64:
            problems["seed"] = f"must be an integer in [0, 2**64), got {self.seed!r}"
        for name in ("snr_db", "gamma_t_dl_db", "gamma_t_ul_db"):
            v = getattr(self, name)
            if not _is_finite(v):
                problems[name] = f"must be a finite number, got {v!r}"
        if not _is_finite(self.eta_db):
            problems["eta_db"] = f"must be a finite number, got {self.eta_db!r}"
        elif self.eta_db > 0.0:
            problems["eta_db"] = f"must be <= 0 dB so that eta <= 1, got {self.eta_db!r}"
        if not isinstance(self.strategy, Strategy):
            problems["strategy"] = f"must be a Strategy, got {self.strategy!r}"
        if problems:
            raise ConfigError(problems)

    @property
    def gamma0(self):
        return db_to_linear(self.snr_db)

    @property
    def eta(self):
        return db_to_linear(self.eta_db)

    @property
    def budget(self):
        return LinkBudget.symmetric(self.gamma0, self.eta,
                                    db_to_linear(self.gamma_t_dl_db),
                                    db_to_linear(self.gamma_t_ul_db))

    @property
    def c_d(self):
        return outage_capacity(db_to_linear(self.gamma_t_dl_db))

    @property
    def c_u(self):
        return outage_capacity(db_to_linear(self.gamma_t_ul_db))

    def replace(self, **changes):
        return replace(self, **changes)


def _is_int(v):
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


def _is_finite(v):
    return isinstance(v, (int, float, np.number)) and not isinstance(v, bool) and math.isfinite(v)


@dataclass(frozen=True)
class ThroughputEstimate:
    n: int
    outage_count_dl: int
    outage_count_ul: int
    p_od_hat: float
    p_ou_hat: float
    se_dl: float
    se_ul: float
    c_d: float
    c_u: float
    c_t: float

    @classmethod
    def from_counts(cls, n, count_dl, count_ul, c_d, c_u):
        n, count_dl, count_ul = int(n), int(count_dl), int(count_ul)
        p_d = count_dl / n
        p_u = count_ul / n
        return cls(
            n=n,
            outage_count_dl=count_dl,
            outage_count_ul=count_ul,
            p_od_hat=p_d,
            p_ou_hat=p_u,
            se_dl=math.sqrt(p_d * (1.0 - p_d) / n),
            se_ul=math.sqrt(p_u * (1.0 - p_u) / n),
            c_d=c_d,
            c_u=c_u,
            c_t=c_d * (1.0 - p_d) + c_u * (1.0 - p_u),
        )


@dataclass(frozen=True)
class Comparison:
    """Paired difference ``c_t(b) - c_t(a)`` on common realizations."""

    delta: float
    se: float
    a: ThroughputEstimate
    b: ThroughputEstimate


@dataclass(frozen=True)
class SweepRow:
    x: float
    estimates: dict
    weights: dict = field(default_factory=dict)


# -- engine -----------------------------------------------------------------

def _outages(batch, strategy, budget, cache):
    if strategy not in cache:
        if strategy.scale not in cache:
            cache[strategy.scale] = scale_gains(batch.h, batch.g, batch.a, strategy.scale)
        rx, tx = select_batch(*cache[strategy.scale], strategy, prescaled=True)
        rows = np.arange(len(batch))
        cache[strategy] = (batch.h[rows, tx], batch.g[rows, rx], batch.a[rows, rx, tx])
    h, g, alpha = cache[strategy]
    out_d = outage_indicator(sinr_dl(budget, h), budget.gamma_t_dl)
    out_u = outage_indicator(sinr_ul(budget, g, alpha), budget.gamma_t_ul)
    return out_d, out_u


def _chunk_ranges(n):
    return [(s, min(s + CHUNK_SIZE, n)) for s in range(0, n, CHUNK_SIZE)]


def _run_jobs(seed, n, m_t, m_r, jobs, workers=1, pairs=()):
    """Evaluate ``jobs`` (strategy, budget) on trials ``0..n-1``.

    Returns integer outage counts of shape (len(jobs), 2) and, for each
    ``(ia, ib)`` in ``pairs``, integer sums of the per-trial outage
    differences ``x = out(ia) - out(ib)`` as ``[sum xd, sum xu, sum xd^2,
    sum xu^2, sum xd*xu]``.
    """
    for strategy, _ in jobs:
        if strategy.is_multi_objective and strategy.w is None:
            raise ConfigError({"strategy": f"{strategy.label} needs a weight"})

    def work(bounds):
        start, stop = bounds
        batch = sample_batch(seed, start, stop, m_t, m_r)
        cache = {}
        ind = [_outages(batch, s, b, cache) for s, b in jobs]
        counts = np.array([[np.count_nonzero(d), np.count_nonzero(u)] for d, u in ind],
                          dtype=np.int64).reshape(len(jobs), 2)
        pstats = np.zeros((len(pairs), 5), dtype=np.int64)
        for k, (ia, ib) in enumerate(pairs):
            xd = ind[ia][0].astype(np.int64) - ind[ib][0]
            xu = ind[ia][1].astype(np.int64) - ind[ib][1]
            pstats[k] = (xd.sum(), xu.sum(), (xd * xd).sum(), (xu * xu).sum(), (xd * xu).sum())
        return counts, pstats

    ranges = _chunk_ranges(n)
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, ranges))
    else:
        parts = [work(r) for r in ranges]
    counts = sum(p[0] for p in parts)
    pstats = sum(p[1] for p in parts)
    return counts, pstats


def _estimate(config, count_dl, count_ul):
    return ThroughputEstimate.from_counts(config.n_samples, count_dl, count_ul,
                                          config.c_d, config.c_u)


def run_trials(config, workers=1):
    """Estimate outage and sum throughput for ``config.strategy``."""
    counts, _ = _run_jobs(config.seed, config.n_samples, config.m_t, config.m_r,
                          [(config.strategy, config.budget)], workers)
    return _estimate(config, *counts[0])


def compare(config, a, b, workers=1):
    """Paired comparison of strategies ``a`` and ``b`` under ``config``."""
    budget = config.budget
    counts, pstats = _run_jobs(config.seed, config.n_samples, config.m_t, config.m_r,
                               [(a, budget), (b, budget)], workers, pairs=[(0, 1)])
    n = config.n_samples
    cd, cu = config.c_d, config.c_u
    sd, su, sdd, suu, sdu = (int(v) for v in pstats[0])
    # per-trial throughput gain of b over a is cd*xd + cu*xu with x = out(a) - out(b)
    mean = (cd * sd + cu * su) / n
    second = (cd * cd * sdd + cu * cu * suu + 2.0 * cd * cu * sdu) / n
    var = max(0.0, second - mean * mean) * n / max(n - 1, 1)
    return Comparison(mean, math.sqrt(var / n), _estimate(config, *counts[0]),
                      _estimate(config, *counts[1]))


def _check_grid(name, grid, lo=None, hi=None):
    values = [float(v) for v in grid]
    if not values:
        raise InvalidArgumentError(f"{name} grid is empty")
    for v in values:
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} grid contains a non-finite value")
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise InvalidArgumentError(f"{name} grid value {v} outside [{lo}, {hi}]")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidArgumentError(f"{name} grid must be strictly ascending")
    return values


def tune_weight(config, w_grid=None, workers=1):
    """Grid-search the weight of a multi-objective strategy.

    Returns ``(w, estimate)`` for the grid point with the largest sum
    throughput; the lowest weight wins ties.  The search runs on the same
    realizations as the reported estimate.
    """
    strategy = config.strategy
    if not strategy.is_multi_objective:
        raise InvalidArgumentError("only multi-objective strategies carry a weight")
    grid = _check_grid("w", default_weight_grid() if w_grid is None else w_grid, 0.0, 1.0)
    budget = config.budget
    jobs = [(strategy.with_weight(w), budget) for w in grid]
    counts, _ = _run_jobs(config.seed, config.n_samples, config.m_t, config.m_r, jobs, workers)
    ests = [_estimate(config, *c) for c in counts]
    best = max(range(len(grid)), key=lambda k: (ests[k].c_t, -k))
    return grid[best], ests[best]


def sweep_weight(base, w_grid, workers=1):
    """MM-AS, LI-AS and MO-WS(w) for every ``w`` in ``w_grid``.

    All rows share the same realizations, so the MM-AS and LI-AS columns are
    constant down the table.
    """
    grid = _check_grid("w", w_grid, 0.0, 1.0)
    scale = base.strategy.scale
    budget = base.budget
    jobs = [(Strategy.mm(scale), budget), (Strategy.li(scale), budget)]
    jobs += [(Strategy.mo_ws(w, scale), budget) for w in grid]
    counts, _ = _run_jobs(base.seed, base.n_samples, base.m_t, base.m_r, jobs, workers)
    mm, li = _estimate(base, *counts[0]), _estimate(base, *counts[1])
    return [SweepRow(w, {"MM-AS": mm, "LI-AS": li, "MO-WS": _estimate(base, *counts[2 + k])},
                     {"MO-WS": w})
            for k, w in enumerate(grid)]


def sweep_snr(base, snr_grid_db, strategies, auto_weight=False, tune_grid=None, workers=1):
    """Evaluate ``strategies`` at every average SNR in ``snr_grid_db``.

    With ``auto_weight`` set, MO-WS takes its weight from
    :func:`fdas.selection.empirical_weight` at each grid point and MO-EWC is
    tuned by grid search over ``tune_grid``.  Without it, every
    multi-objective strategy must carry an explicit weight.
    """
    grid = _check_grid("snr", snr_grid_db)
    strategies = list(strategies)
    labels = [s.label for s in strategies]
    if not strategies:
        raise InvalidArgumentError("at least one strategy is required")
    if len(set(labels)) != len(labels):
        raise InvalidArgumentError(f"duplicate strategies in {labels}")
    tune = _check_grid("w", default_weight_grid() if tune_grid is None else tune_grid, 0.0, 1.0)

    jobs = []
    plan = []  # per grid point: label -> (first job index, weights evaluated)
    for snr in grid:
        cfg = base.replace(snr_db=snr)
        budget = cfg.budget
        entry = {}
        for s in strategies:
            if s.is_multi_objective and auto_weight:
                if s.kind is StrategyKind.MO_WS:
                    ws = [empirical_weight(cfg.eta, snr)]
                else:
                    ws = tune
            elif s.is_multi_objective:
                if s.w is None:
                    raise ConfigError({"w": f"{s.label} needs a weight unless auto_weight is set"})
                ws = [s.w]
            else:
                ws = [None]
            entry[s.label] = (len(jobs), ws)
            jobs += [(s if w is None else s.with_weight(w), budget) for w in ws]
        plan.append((cfg, entry))

    counts, _ = _run_jobs(base.seed, base.n_samples, base.m_t, base.m_r, jobs, workers)
    rows = []
    for snr, (cfg, entry) in zip(grid, plan):
        estimates, weights = {}, {}
        for label, (first, ws) in entry.items():
            ests = [_estimate(cfg, *counts[first + k]) for k in range(len(ws))]
            best = max(range(len(ws)), key=lambda k: (ests[k].c_t, -k))
            estimates[label] = ests[best]
            if ws[best] is not None:
                weights[label] = ws[best]
        rows.append(SweepRow(snr, estimates, weights))
    return rows
