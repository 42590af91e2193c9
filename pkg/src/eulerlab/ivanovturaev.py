"""Origin-containment signs of vector tuples and Monte-Carlo estimates of the
bounded Euler cocycle of GL+(n+1, R).

For n+2 vectors v_0..v_{n+1} in R^{n+1}, t(v) is +1 or -1 when the origin
lies inside the simplex they span, signed by det(v_1 - v_0, ..., v_{n+1} - v_0),
and 0 otherwise or when the tuple is not in general position.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._config import threads
from .errors import BadDeterminant, Degenerate, InputError

GENERIC_EPS = 1e-9
CHUNK = 1 << 14
MIN_SAMPLES = 1000


def _tuple(v):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
        raise InputError(f"expected d+1 vectors in R^d, got shape {v.shape}")
    return v


def t_value(v, eps=GENERIC_EPS):
    t, _ = kernels.t_values(_tuple(v)[None], eps)
    return int(t[0])


def t_value_checked(v, eps=GENERIC_EPS):
    """t(v), raising Degenerate instead of returning 0 for non-generic tuples."""
    t, deg = kernels.t_values(_tuple(v)[None], eps)
    if deg[0]:
        raise Degenerate("tuple is not in general position")
    return int(t[0])


def linear_dependence(v, eps=GENERIC_EPS):
    """The coefficients alpha with sum alpha_i v_i = 0, scaled to unit length."""
    v = _tuple(v)
    s = np.linalg.svd(v.T, compute_uv=False)
    scale = max(float(np.linalg.norm(v, axis=1).max()), 1e-300)
    if s[-1] <= eps * scale:
        raise Degenerate("dependence space is more than one-dimensional")
    alpha = np.linalg.svd(v.T)[2][-1]
    if np.abs(alpha).min() <= eps:
        raise Degenerate("a proper subtuple is linearly dependent")
    return alpha


def smillie_sign_patterns(v, eps=GENERIC_EPS):
    """(I1, I2): the only sign vectors I with t(I_0 v_0, ..., I_k v_k) != 0."""
    alpha = linear_dependence(v, eps)
    i1 = np.where(alpha > 0, 1, -1)
    if i1[0] < 0:
        i1 = -i1
    return tuple(int(x) for x in i1), tuple(int(-x) for x in i1)


def all_sign_patterns(k):
    return np.array(list(itertools.product((1, -1), repeat=k)), dtype=np.float64)


def sign_pattern_values(V, eps=GENERIC_EPS):
    """t of every sign flip of each tuple: shape (B, 2^k) for V of shape (B, k, d)."""
    V = np.asarray(V, dtype=np.float64)
    if V.ndim == 2:
        V = V[None]
    B, k, d = V.shape
    pats = all_sign_patterns(k)
    flipped = V[:, None, :, :] * pats[None, :, :, None]
    t, _ = kernels.t_values(flipped.reshape(-1, k, d), eps)
    return t.reshape(B, len(pats))


def coboundary_batch(W, eps=GENERIC_EPS):
    """T = sum_i (-1)^i t(faces without w_i) for W of shape (B, d+2, d).

    Returns (T, degenerate) where degenerate marks tuples with a
    non-generic face.
    """
    W = np.asarray(W, dtype=np.float64)
    B, k, d = W.shape
    if k != d + 2:
        raise InputError(f"expected d+2 vectors in R^d, got shape {W.shape}")
    faces = np.stack([np.delete(W, i, axis=1) for i in range(k)], axis=1)
    t, deg = kernels.t_values(faces.reshape(B * k, k - 1, d), eps)
    t = t.reshape(B, k).astype(np.int64)
    signs = np.where(np.arange(k) % 2 == 0, 1, -1)
    return (t * signs).sum(axis=1), deg.reshape(B, k).any(axis=1)


def it_coboundary_check(w, eps=GENERIC_EPS):
    """The alternating face sum of t over n+3 vectors; 0 whenever every face is generic."""
    T, deg = coboundary_batch(np.asarray(w, dtype=np.float64)[None], eps)
    if deg[0]:
        raise Degenerate("a face is not in general position")
    return int(T[0])


def _check_det(g):
    g = np.asarray(g, dtype=np.float64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise InputError("expected a square matrix")
    if not np.linalg.det(g) > 0:
        raise BadDeterminant(f"determinant {np.linalg.det(g):.6g} is not positive")
    return g


def it_invariance_check(g, v, eps=GENERIC_EPS):
    """t(g v) == t(v), with both tuples required to be generic."""
    g = _check_det(g)
    v = _tuple(v)
    return t_value_checked(v @ g.T, eps) == t_value_checked(v, eps)


def sample_ball(rng, shape, dim):
    """Uniform points in the closed unit ball of R^dim: Gaussian direction times U^(1/dim)."""
    x = rng.standard_normal(shape + (dim,))
    x /= np.linalg.norm(x, axis=-1, keepdims=True)
    return x * rng.random(shape + (1,)) ** (1.0 / dim)


@dataclass(frozen=True)
class EulEstimate:
    mean: float
    half_width: float
    samples: int
    discarded: int
    seed: int
    delta: float
    dim: int

    @property
    def interval(self):
        return self.mean - self.half_width, self.mean + self.half_width

    def contains(self, x):
        lo, hi = self.interval
        return lo <= x <= hi

    def to_json(self):
        return {
            "mean": self.mean,
            "half_width": self.half_width,
            "samples": self.samples,
            "discarded": self.discarded,
            "seed": self.seed,
            "delta": self.delta,
            "dim": self.dim,
        }


def hoeffding_half_width(samples, delta):
    """Two-sided Hoeffding radius for the mean of values in [-1, 1]."""
    return math.sqrt(2.0 * math.log(2.0 / delta) / samples)


def _chunk_sum(gs, seed, index, size, eps):
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    k, d = gs.shape[0], gs.shape[1]
    v = sample_ball(rng, (size, k), d)
    w1 = np.einsum("kij,bkj->bki", gs, v)
    # swapping g0 and g1 negates eul, so the difference is unbiased
    swapped = gs[[1, 0] + list(range(2, k))]
    w2 = np.einsum("kij,bkj->bki", swapped, v)
    t1, deg1 = kernels.t_values(w1, eps)
    t2, deg2 = kernels.t_values(w2, eps)
    total = 0.5 * float(t1.astype(np.int64).sum() - t2.astype(np.int64).sum())
    return total, int(np.count_nonzero(deg1 | deg2))


def eul_estimate(matrices, samples, delta=1e-3, seed=0, eps=GENERIC_EPS):
    """Monte-Carlo estimate of eul(g_0, ..., g_{n+1}) with a Hoeffding interval.

    Each sample draws v_i uniformly from the unit ball and scores
    (t(g_0 v_0, g_1 v_1, ...) - t(g_1 v_0, g_0 v_1, ...)) / 2.  Chunks use
    independent streams from (seed, chunk index) and are summed in order,
    so the result does not depend on the thread count.
    """
    gs = np.array([_check_det(g) for g in matrices])
    if gs.ndim != 3 or gs.shape[0] != gs.shape[1] + 1:
        raise InputError("need n+2 matrices of size (n+1) x (n+1)")
    if samples < MIN_SAMPLES:
        raise InputError(f"at least {MIN_SAMPLES} samples are required")
    if not 0 < delta < 1:
        raise InputError("delta must lie in (0, 1)")
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    jobs = [(gs, seed, i, s, eps) for i, s in enumerate(sizes)]
    workers = threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda a: _chunk_sum(*a), jobs))
    else:
        parts = [_chunk_sum(*a) for a in jobs]
    total = math.fsum(p[0] for p in parts)
    discarded = sum(p[1] for p in parts)
    return EulEstimate(total / samples, hoeffding_half_width(samples, delta), samples, discarded, seed, delta, gs.shape[1] - 1)
