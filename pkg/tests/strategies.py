"""Random lifts for tests: numpy generators and hypothesis strategies."""

import math

import numpy as np
from hypothesis import strategies as st

from eulerlab.lifts import Compose, Mobius, PiecewiseLinear


def random_pl(rng, k=5):
    xs = np.sort(rng.uniform(0, 1, k))
    ys = np.sort(rng.uniform(0, 1, k)) + rng.uniform(-1, 1)
    # keep breakpoints apart so slopes stay moderate
    xs = np.unique(np.round(xs, 6))
    ys = np.unique(np.round(ys, 6))[: len(xs)]
    xs = xs[: len(ys)]
    return PiecewiseLinear.from_graph(xs, ys)


def random_sl2(rng, scale=1.0):
    while True:
        m = rng.normal(scale=scale, size=(2, 2))
        d = np.linalg.det(m)
        if abs(d) > 0.05:
            break
    if d < 0:
        m[0] *= -1
        d = -d
    return m / math.sqrt(d)


def random_mobius(rng, branch=0):
    return Mobius(random_sl2(rng), branch)


def elliptic_sl2(rng, angle=None):
    """Conjugate of a rotation matrix, so |trace| < 2."""
    theta = rng.uniform(0.1, math.pi - 0.1) if angle is None else angle
    c, s = math.cos(theta), math.sin(theta)
    r = np.array([[c, -s], [s, c]])
    p = random_sl2(rng)
    return p @ r @ np.linalg.inv(p)


def random_map(rng, i):
    """Alternates PL maps and PL after Möbius."""
    return random_pl(rng) if i % 2 else Compose(random_pl(rng), random_mobius(rng))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def pl_lifts(draw):
    return random_pl(np.random.default_rng(draw(seeds)))


@st.composite
def mobius_lifts(draw):
    return Mobius(random_sl2(np.random.default_rng(draw(seeds))), draw(st.integers(-2, 2)))


@st.composite
def lifts(draw):
    rng = np.random.default_rng(draw(seeds))
    kind = draw(st.sampled_from(["pl", "mobius", "mixed"]))
    if kind == "pl":
        return random_pl(rng)
    if kind == "mobius":
        return random_mobius(rng)
    return Compose(random_pl(rng), random_mobius(rng))
