import numpy as np
import pytest

from bvkit.stepfun import UNIT, Interval, make_step_function, spike, two_point_pair


def random_step(rng, m=None, lo=-2.0, hi=2.0, min_gap=0.0, min_jump=0.0):
    """Random step function on [0,1] with m pieces (m+1 breakpoints)."""
    if m is None:
        m = int(rng.integers(1, 7))
    if m == 1:
        bk = [0.0, 1.0]
    else:
        while True:
            inner = np.sort(rng.uniform(0.0, 1.0, m - 1))
            pts = np.concatenate(([0.0], inner, [1.0]))
            if np.diff(pts).min() > min_gap:
                bk = pts.tolist()
                break
    pieces = rng.uniform(lo, hi, m)
    if min_jump > 0.0:
        for i in range(1, m):
            while abs(pieces[i] - pieces[i - 1]) < min_jump:
                pieces[i] = rng.uniform(lo, hi)
    points = rng.uniform(lo, hi, m + 1)
    return make_step_function(UNIT, bk, pieces.tolist(), points.tolist())


@pytest.fixture(scope="session")
def x0x1():
    return two_point_pair()


@pytest.fixture(scope="session")
def spike4():
    return spike(4, 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)


def interval(a, b):
    return Interval(a, b)
