import itertools

import numpy as np
import pytest

from fdas.channel import ChannelRealization

ACCEPTANCE_LINES = []


def enumerate_scores(ch, kind, w=None, p=1.0, scale="amplitude"):
    """Brute-force score of every (i, j) pair, written without numpy broadcasting."""
    tr = (lambda x: x**0.5) if scale == "amplitude" else (lambda x: x)
    out = {}
    for i, j in itertools.product(range(ch.m_r), range(ch.m_t)):
        h, g, a = tr(float(ch.h[j])), tr(float(ch.g[i])), tr(float(ch.a[i, j]))
        if kind == "MM-AS":
            out[i, j] = -(h + g) / 2
        elif kind == "LI-AS":
            out[i, j] = a
        elif kind == "MO-WS":
            out[i, j] = -((1 - w) / 2) * h - ((1 - w) / 2) * g + w * a
        else:
            wk = ((1 - w) / 2, (1 - w) / 2, w)
            fk = (-h, -g, a)
            out[i, j] = sum((np.exp(p * wi) - 1) * np.exp(p * fi) for wi, fi in zip(wk, fk))
    return out


def brute_argmin(score_map):
    """Minimum with ties broken on the lowest (i, j) in lexicographic order."""
    best = min(score_map.values())
    return min(k for k, v in score_map.items() if v == best), best


@pytest.fixture
def example_channel():
    # a[i][j] with rows indexed by the receive antenna
    return ChannelRealization(h=[0.2, 0.9], g=[0.5, 0.1], a=[[1.0, 2.0], [3.0, 4.0]])


@pytest.fixture
def acceptance_report():
    def report(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
