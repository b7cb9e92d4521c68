import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_argmin, enumerate_scores
from fdas.channel import ChannelRealization, sample_batch
from fdas.errors import InvalidArgumentError
from fdas.selection import (
    Strategy,
    StrategyKind,
    empirical_weight,
    select,
    select_batch,
    select_li,
    select_mm,
    select_mo_ewc,
    select_mo_ws,
)

# worked examples use zero-based (rx, tx) indices


class TestMaxMax:
    def test_example(self, example_channel):
        s = select_mm(example_channel, scale="power")
        assert (s.rx_index, s.tx_index) == (0, 1)
        assert (s.h, s.g, s.alpha) == (0.9, 0.5, 2.0)
        assert s.objective_value == pytest.approx(-(0.9 + 0.5) / 2)

    def test_single_antenna(self):
        s = select_mm(ChannelRealization([0.3], [0.7], [[2.0]]))
        assert (s.rx_index, s.tx_index) == (0, 0)

    def test_maxima(self):
        b = sample_batch(3, 0, 200, 5, 3)
        for k in range(len(b)):
            ch = b[k]
            s = select_mm(ch)
            assert np.all(s.h >= ch.h) and np.all(s.g >= ch.g)

    def test_tie_breaks_low(self):
        ch = ChannelRealization([1.0, 1.0, 0.5], [2.0, 2.0], np.ones((2, 3)))
        s = select_mm(ch)
        assert (s.rx_index, s.tx_index) == (0, 0)


class TestLeastInterference:
    def test_example(self, example_channel):
        s = select_li(example_channel, scale="power")
        assert (s.rx_index, s.tx_index) == (0, 0)
        assert (s.h, s.g, s.alpha) == (0.2, 0.5, 1.0)
        assert s.objective_value == 1.0

    def test_minimum(self):
        b = sample_batch(4, 0, 200, 3, 5)
        for k in range(len(b)):
            s = select_li(b[k])
            assert np.all(s.alpha <= b[k].a)

    def test_single_antenna(self):
        s = select_li(ChannelRealization([0.3], [0.7], [[2.0]]))
        assert (s.rx_index, s.tx_index) == (0, 0)

    def test_tie_breaks_on_receive_then_transmit(self):
        a = [[3.0, 1.0, 1.0], [1.0, 2.0, 1.0]]
        s = select_li(ChannelRealization([1, 1, 1], [1, 1], a))
        assert (s.rx_index, s.tx_index) == (0, 1)


class TestWeightedSum:
    def test_example_scores_power(self, example_channel):
        expected = {(0, 0): 0.325, (0, 1): 0.65, (1, 0): 1.425, (1, 1): 1.75}
        got = enumerate_scores(example_channel, "MO-WS", w=0.5, scale="power")
        for k, v in expected.items():
            assert got[k] == pytest.approx(v, abs=1e-12)
        s = select_mo_ws(example_channel, 0.5, scale="power")
        assert (s.rx_index, s.tx_index) == (0, 0)
        assert s.objective_value == pytest.approx(0.325, abs=1e-12)

    def test_example_amplitude(self, example_channel):
        (i, j), best = brute_argmin(enumerate_scores(example_channel, "MO-WS", w=0.5))
        s = select_mo_ws(example_channel, 0.5)
        assert (s.rx_index, s.tx_index) == (i, j) == (0, 0)
        assert s.objective_value == pytest.approx(best, rel=1e-12)

    @pytest.mark.parametrize("w", [-0.01, 1.01, math.nan])
    def test_weight_out_of_range(self, example_channel, w):
        with pytest.raises(InvalidArgumentError):
            select_mo_ws(example_channel, w)

    @pytest.mark.parametrize("scale", ["amplitude", "power"])
    def test_reductions(self, scale):
        b = sample_batch(21, 0, 5000, 4, 6)
        mm = select_batch(b.h, b.g, b.a, Strategy.mm(scale))
        li = select_batch(b.h, b.g, b.a, Strategy.li(scale))
        ws0 = select_batch(b.h, b.g, b.a, Strategy.mo_ws(0.0, scale))
        ws1 = select_batch(b.h, b.g, b.a, Strategy.mo_ws(1.0, scale))
        assert np.array_equal(mm[0], ws0[0]) and np.array_equal(mm[1], ws0[1])
        assert np.array_equal(li[0], ws1[0]) and np.array_equal(li[1], ws1[1])

    def test_objective_matches_baselines_at_endpoints(self, example_channel):
        assert select_mo_ws(example_channel, 0.0).objective_value == select_mm(example_channel).objective_value
        assert select_mo_ws(example_channel, 1.0).objective_value == select_li(example_channel).objective_value

    @pytest.mark.parametrize("scale", ["amplitude", "power"])
    def test_scale_invariance(self, scale):
        b = sample_batch(5, 0, 2000, 4, 4)
        for w in (0.2, 0.5, 0.8):
            s = Strategy.mo_ws(w, scale)
            base = select_batch(b.h, b.g, b.a, s)
            scaled = select_batch(3.7 * b.h, 3.7 * b.g, 3.7 * b.a, s)
            assert np.array_equal(base[0], scaled[0]) and np.array_equal(base[1], scaled[1])


class TestExponentialWeighted:
    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 5.0])
    def test_reductions(self, p):
        b = sample_batch(13, 0, 5000, 4, 4)
        mm = select_batch(b.h, b.g, b.a, Strategy.mm())
        li = select_batch(b.h, b.g, b.a, Strategy.li())
        e0 = select_batch(b.h, b.g, b.a, Strategy.mo_ewc(0.0, p))
        e1 = select_batch(b.h, b.g, b.a, Strategy.mo_ewc(1.0, p))
        assert np.array_equal(np.stack(mm), np.stack(e0))
        assert np.array_equal(np.stack(li), np.stack(e1))

    @pytest.mark.parametrize("scale", ["amplitude", "power"])
    def test_example_against_brute_force(self, example_channel, scale):
        (i, j), best = brute_argmin(enumerate_scores(example_channel, "MO-EWC", w=0.5, p=1.0,
                                                     scale=scale))
        s = select_mo_ewc(example_channel, 0.5, 1.0, scale=scale)
        assert (s.rx_index, s.tx_index) == (i, j)
        assert s.objective_value == pytest.approx(best, rel=1e-12)

    @pytest.mark.parametrize("w, p", [(0.5, 0.0), (0.5, -1.0), (1.5, 1.0), (0.5, math.inf)])
    def test_invalid(self, example_channel, w, p):
        with pytest.raises(InvalidArgumentError):
            select_mo_ewc(example_channel, w, p)


@pytest.mark.parametrize("kind, w, p", [
    ("MM-AS", None, 1.0), ("LI-AS", None, 1.0),
    ("MO-WS", 0.0, 1.0), ("MO-WS", 0.3, 1.0), ("MO-WS", 1.0, 1.0),
    ("MO-EWC", 0.3, 0.5), ("MO-EWC", 0.7, 2.0),
])
@pytest.mark.parametrize("scale", ["amplitude", "power"])
def test_optimality_and_consistency(kind, w, p, scale):
    strategy = Strategy(StrategyKind(kind), w=w, p=p, scale=scale)
    rng = np.random.default_rng(17)
    for _ in range(150):
        m_t, m_r = rng.integers(1, 6, size=2)
        ints = rng.integers(1, 4, size=m_t + m_r + m_t * m_r).astype(float)
        ch = ChannelRealization(ints[:m_t], ints[m_t:m_t + m_r], ints[m_t + m_r:].reshape(m_r, m_t))
        s = select(ch, strategy)
        (i, j), best = brute_argmin(enumerate_scores(ch, kind, w, p, scale))
        assert s.objective_value == pytest.approx(best, rel=1e-12, abs=1e-12)
        if kind != "MO-EWC":
            # integer gains give exact ties, so the lexicographic tie-break must match
            assert (s.rx_index, s.tx_index) == (i, j)
        assert (s.h, s.g, s.alpha) == (ch.h[s.tx_index], ch.g[s.rx_index], ch.a[s.rx_index, s.tx_index])


class TestEmpiricalWeight:
    @pytest.mark.parametrize("eta, snr, expected", [
        (0.1, 15.0, 0.2500), (1.0, 15.0, 0.5), (0.001, 0.0, 0.0),
    ])
    def test_examples(self, eta, snr, expected):
        assert empirical_weight(eta, snr) == pytest.approx(expected, abs=1e-3)

    def test_upper_clamp(self):
        assert empirical_weight(1.0, 60.0) == 1.0

    @pytest.mark.parametrize("eta", [0.0, -0.1, math.nan])
    def test_rejects_non_positive_eta(self, eta):
        with pytest.raises(InvalidArgumentError):
            empirical_weight(eta, 10.0)

    @given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0), st.floats(-50, 80), st.floats(-50, 80))
    @settings(max_examples=300, deadline=None)
    def test_range_and_monotone(self, e1, e2, s1, s2):
        lo_e, hi_e = sorted((e1, e2))
        lo_s, hi_s = sorted((s1, s2))
        w_lo = empirical_weight(lo_e, lo_s)
        assert 0.0 <= w_lo <= 1.0
        assert w_lo <= empirical_weight(hi_e, lo_s)
        assert w_lo <= empirical_weight(lo_e, hi_s)


def test_strategy_validation():
    with pytest.raises(InvalidArgumentError):
        Strategy(StrategyKind.MO_WS, w=2.0)
    with pytest.raises(InvalidArgumentError):
        Strategy(StrategyKind.MO_EWC, w=0.5, p=0.0)
    with pytest.raises(InvalidArgumentError):
        Strategy(StrategyKind.MM_AS, scale="dB")
    assert Strategy.mo_ws(0.4).label == "MO-WS"
