import math

import numpy as np
import pytest

from nablafrac import FracOperator, Grid, GridFunction


def random_operator(rng, a, nu, b_off, p_range=(0.5, 2.0), q_range=(-1.0, 1.0)):
    n = math.ceil(nu)
    p = GridFunction(Grid(a, n, b_off), tuple(rng.uniform(*p_range, b_off - n + 1)))
    q = GridFunction(Grid(a, n + 1, b_off), tuple(rng.uniform(*q_range, b_off - n)))
    return FracOperator(a, nu, p, q)


def random_forcing(rng, op, lo=-1.0, hi=1.0):
    n = op.N
    return GridFunction(
        Grid(op.a, n + 1, op.b_offset),
        tuple(rng.uniform(lo, hi, op.b_offset - n)),
    )


def max_gap(x, y, offsets=None):
    if offsets is None:
        offsets = range(max(x.grid.lo, y.grid.lo), min(x.grid.hi, y.grid.hi) + 1)
    return max(abs(x.at(k) - y.at(k)) for k in offsets)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
