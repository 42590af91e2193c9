"""Pure numpy kernels, mirrors of ``_ckernels.pyx``.

A program is a sequence of primitive maps applied left to right and packed
into three arrays:

    kinds    int32   0 = translate, 1 = piecewise linear, 2 = Mobius
    offsets  int64   start of each primitive's record in ``data``
    data     float64 concatenated records

Records:
    translate   [c]
    pl          [K, x_0..x_{K-1}, y_0..y_{K-1}]  knots already cover [0, 1]
    mobius      [P, Q, u0, branch]  with P = a^2 + c^2, Q = ab + cd, det = 1
"""

import numpy as np

KIND_TRANSLATE = 0
KIND_PL = 1
KIND_MOBIUS = 2


def _apply_inplace(kinds, offsets, data, y):
    for kind, off in zip(kinds, offsets):
        if kind == KIND_TRANSLATE:
            y += data[off]
        elif kind == KIND_PL:
            n = int(data[off])
            kx = data[off + 1 : off + 1 + n]
            ky = data[off + 1 + n : off + 1 + 2 * n]
            fl = np.floor(y)
            y[:] = np.interp(y - fl, kx, ky) + fl
        else:
            p, q, u0, branch = data[off : off + 4]
            fl = np.floor(y)
            t = np.pi * (y - fl)
            ang = np.arctan2(np.sin(t), p * np.cos(t) + q * np.sin(t)) / np.pi
            y[:] = u0 + ang + fl + branch
    return y


def apply_program(kinds, offsets, data, x):
    y = np.array(x, dtype=np.float64, copy=True).reshape(-1)
    return _apply_inplace(kinds, offsets, data, y)


def orbit_enclosure(kinds, offsets, data, xs, r, n, q0, tol, max_steps, lo, hi):
    """Continue the orbit of the grid ``xs`` (sorted, in [0, 1)) and tighten [lo, hi].

    ``r`` and ``n`` hold the fractional and integer parts of the orbit after
    ``q0`` steps and are updated in place.  Stops at width ``tol`` or after
    step ``max_steps``.  Returns ``(lo, hi, steps)``.
    """
    xs = np.asarray(xs, dtype=np.float64)
    xnext = np.roll(xs, -1)
    xnext[-1] += 1.0
    q = q0
    while q < max_steps:
        q += 1
        z = _apply_inplace(kinds, offsets, data, r)
        fl = np.floor(z)
        n += fl
        r -= fl
        t = r - xs
        lo_q = (n + np.floor(t)).max() / q
        hi_q = (n + np.ceil(t)).min() / q
        # grid gaps: y_i - x_{i+1} and y_{i+1} - x_i with wrap-around
        rnext = np.roll(r, -1)
        nnext = np.roll(n, -1)
        nnext[-1] += 1.0
        gl = (n + (r - xnext)).min() / q
        gh = (nnext + (rnext - xs)).max() / q
        lo = max(lo, lo_q, gl)
        hi = min(hi, hi_q, gh)
        if hi < lo:
            lo = hi = 0.5 * (lo + hi)
        if hi - lo <= tol:
            break
    return lo, hi, q


def iterate_displacement(kinds, offsets, data, y, q):
    """F^q(y) - y for each entry of y, keeping integer parts separate."""
    y = np.asarray(y, dtype=np.float64)
    fl0 = np.floor(y)
    r = y - fl0
    r0 = r.copy()
    n = np.zeros_like(r)
    for _ in range(int(q)):
        _apply_inplace(kinds, offsets, data, r)
        fl = np.floor(r)
        n += fl
        r -= fl
    return n + (r - r0)


def t_values(V, eps):
    """Origin-containment signs for a batch of tuples.

    ``V`` has shape (B, d + 1, d).  Returns ``(t, degenerate)`` with t in
    {-1, 0, 1} as int8 and degenerate as bool.
    """
    V = np.asarray(V, dtype=np.float64)
    B, k, d = V.shape
    minors = np.empty((B, k, d, d))
    for i in range(k):
        minors[:, i] = np.delete(V, i, axis=1)
    D = np.linalg.det(minors)
    signs = np.where(np.arange(k) % 2 == 0, 1.0, -1.0)
    alpha = D * signs
    delta = alpha.sum(axis=1)
    norms = np.linalg.norm(V, axis=2)
    logn = np.log(np.maximum(norms, 1e-300))
    minor_scale = np.exp(logn.sum(axis=1, keepdims=True) - logn)
    diffs = V[:, 1:, :] - V[:, :1, :]
    delta_scale = np.prod(np.linalg.norm(diffs, axis=2), axis=1)
    degenerate = (np.abs(D) <= eps * minor_scale).any(axis=1)
    degenerate |= np.abs(delta) <= eps * delta_scale
    safe = np.where(degenerate, 1.0, delta)
    bary = alpha / safe[:, None]
    resid = np.linalg.norm(np.einsum("bk,bkd->bd", bary, V), axis=1)
    scale = np.einsum("bk,bk->b", np.abs(bary), norms)
    degenerate |= resid > 1e-8 * np.maximum(scale, 1e-300)
    sd = np.sign(delta)
    inside = (np.sign(alpha) == sd[:, None]).all(axis=1)
    t = np.where(inside & ~degenerate, sd, 0.0).astype(np.int8)
    return t, degenerate
