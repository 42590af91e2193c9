# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contracts as ``_pykernels``."""

import numpy as np
from libc.math cimport floor, ceil, sin, cos, atan2, fabs, sqrt, log, exp, M_PI

cdef enum:
    MAXD = 12


cdef inline double _apply(const int[::1] kinds, const long long[::1] offs,
                          const double[::1] data, double x) noexcept nogil:
    cdef Py_ssize_t j, off, n, lo, hi, mid
    cdef double fl, r, t, p, q, x0, x1
    for j in range(kinds.shape[0]):
        off = offs[j]
        if kinds[j] == 0:
            x = x + data[off]
        elif kinds[j] == 1:
            n = <Py_ssize_t>data[off]
            fl = floor(x)
            r = x - fl
            lo = 0
            hi = n - 1
            # largest lo with knot_x[lo] <= r
            while hi - lo > 1:
                mid = (lo + hi) >> 1
                if data[off + 1 + mid] <= r:
                    lo = mid
                else:
                    hi = mid
            x0 = data[off + 1 + lo]
            x1 = data[off + 1 + lo + 1]
            t = (r - x0) / (x1 - x0)
            x = data[off + 1 + n + lo] + t * (data[off + 1 + n + lo + 1] - data[off + 1 + n + lo]) + fl
        else:
            p = data[off]
            q = data[off + 1]
            fl = floor(x)
            t = M_PI * (x - fl)
            x = data[off + 2] + atan2(sin(t), p * cos(t) + q * sin(t)) / M_PI + fl + data[off + 3]
    return x


def apply_program(kinds, offsets, data, x):
    cdef const int[::1] k = np.ascontiguousarray(kinds, dtype=np.int32)
    cdef const long long[::1] o = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const double[::1] d = np.ascontiguousarray(data, dtype=np.float64)
    xa = np.array(x, dtype=np.float64, copy=True).reshape(-1)
    cdef double[::1] y = xa
    cdef Py_ssize_t i
    with nogil:
        for i in range(y.shape[0]):
            y[i] = _apply(k, o, d, y[i])
    return xa


def orbit_enclosure(kinds, offsets, data, xs, r_state, n_state, long long q0,
                    double tol, long long max_steps, double lo, double hi):
    cdef const int[::1] k = np.ascontiguousarray(kinds, dtype=np.int32)
    cdef const long long[::1] o = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const double[::1] d = np.ascontiguousarray(data, dtype=np.float64)
    cdef const double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] r = r_state
    cdef double[::1] n = n_state
    cdef Py_ssize_t m = x.shape[0], i, inext
    cdef long long q = q0
    cdef double z, fl, t, maxf, minc, gl, gh, v, xn, nn, mid
    with nogil:
        while q < max_steps:
            q += 1
            for i in range(m):
                z = _apply(k, o, d, r[i])
                fl = floor(z)
                n[i] += fl
                r[i] = z - fl
            maxf = -1e300
            minc = 1e300
            gl = 1e300
            gh = -1e300
            for i in range(m):
                t = r[i] - x[i]
                v = n[i] + floor(t)
                if v > maxf:
                    maxf = v
                v = n[i] + ceil(t)
                if v < minc:
                    minc = v
                inext = i + 1
                if inext == m:
                    xn = x[0] + 1.0
                    nn = n[0] + 1.0
                    inext = 0
                else:
                    xn = x[inext]
                    nn = n[inext]
                v = n[i] + (r[i] - xn)
                if v < gl:
                    gl = v
                v = nn + (r[inext] - x[i])
                if v > gh:
                    gh = v
            if maxf / q > lo:
                lo = maxf / q
            if gl / q > lo:
                lo = gl / q
            if minc / q < hi:
                hi = minc / q
            if gh / q < hi:
                hi = gh / q
            if hi < lo:
                mid = 0.5 * (lo + hi)
                lo = mid
                hi = mid
            if hi - lo <= tol:
                break
    return lo, hi, q


def iterate_displacement(kinds, offsets, data, y, long long q):
    cdef const int[::1] k = np.ascontiguousarray(kinds, dtype=np.int32)
    cdef const long long[::1] o = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const double[::1] d = np.ascontiguousarray(data, dtype=np.float64)
    out_a = np.array(y, dtype=np.float64, copy=True).reshape(-1)
    cdef double[::1] out = out_a
    cdef Py_ssize_t i
    cdef long long j
    cdef double r, r0, n, z, fl
    with nogil:
        for i in range(out.shape[0]):
            r0 = out[i] - floor(out[i])
            r = r0
            n = 0.0
            for j in range(q):
                z = _apply(k, o, d, r)
                fl = floor(z)
                n += fl
                r = z - fl
            out[i] = n + (r - r0)
    return out_a


cdef double _det(double* a, int d) noexcept nogil:
    """Determinant by partial-pivot elimination; destroys ``a`` (row-major)."""
    cdef int i, j, c, piv
    cdef double det = 1.0, best, f, tmp
    for c in range(d):
        piv = c
        best = fabs(a[c * d + c])
        for i in range(c + 1, d):
            if fabs(a[i * d + c]) > best:
                best = fabs(a[i * d + c])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != c:
            for j in range(d):
                tmp = a[c * d + j]
                a[c * d + j] = a[piv * d + j]
                a[piv * d + j] = tmp
            det = -det
        det *= a[c * d + c]
        for i in range(c + 1, d):
            f = a[i * d + c] / a[c * d + c]
            for j in range(c, d):
                a[i * d + j] -= f * a[c * d + j]
    return det


def t_values(V, double eps):
    Va = np.ascontiguousarray(V, dtype=np.float64)
    if Va.ndim != 3 or Va.shape[1] != Va.shape[2] + 1:
        raise ValueError("expected shape (B, d+1, d)")
    if Va.shape[2] > MAXD:
        raise ValueError("dimension too large for compiled kernel")
    cdef const double[:, :, ::1] v = Va
    cdef Py_ssize_t B = Va.shape[0], b
    cdef int d = Va.shape[2], kk = d + 1, i, j, row, c
    ta = np.zeros(B, dtype=np.int8)
    dega = np.zeros(B, dtype=np.uint8)
    cdef signed char[::1] tout = ta
    cdef unsigned char[::1] dout = dega
    cdef double a[MAXD * MAXD]
    cdef double alpha[MAXD + 1]
    cdef double norms[MAXD + 1]
    cdef double D, delta, scale, lognorm_sum, dscale, s, resid, rs, bscale
    cdef bint deg, inside
    with nogil:
        for b in range(B):
            lognorm_sum = 0.0
            for i in range(kk):
                s = 0.0
                for c in range(d):
                    s += v[b, i, c] * v[b, i, c]
                norms[i] = sqrt(s)
                lognorm_sum += log(norms[i] if norms[i] > 1e-300 else 1e-300)
            deg = False
            delta = 0.0
            for i in range(kk):
                row = 0
                for j in range(kk):
                    if j == i:
                        continue
                    for c in range(d):
                        a[row * d + c] = v[b, j, c]
                    row += 1
                D = _det(a, d)
                scale = exp(lognorm_sum - log(norms[i] if norms[i] > 1e-300 else 1e-300))
                if fabs(D) <= eps * scale:
                    deg = True
                alpha[i] = D if i % 2 == 0 else -D
                delta += alpha[i]
            dscale = 1.0
            for i in range(1, kk):
                s = 0.0
                for c in range(d):
                    s += (v[b, i, c] - v[b, 0, c]) * (v[b, i, c] - v[b, 0, c])
                dscale *= sqrt(s)
            if fabs(delta) <= eps * dscale:
                deg = True
            if not deg:
                resid = 0.0
                bscale = 0.0
                for c in range(d):
                    rs = 0.0
                    for i in range(kk):
                        rs += alpha[i] / delta * v[b, i, c]
                    resid += rs * rs
                for i in range(kk):
                    bscale += fabs(alpha[i] / delta) * norms[i]
                if sqrt(resid) > 1e-8 * bscale:
                    deg = True
            if deg:
                dout[b] = 1
                tout[b] = 0
                continue
            inside = True
            for i in range(kk):
                if (alpha[i] > 0) != (delta > 0) or alpha[i] == 0.0:
                    inside = False
                    break
            if inside:
                tout[b] = 1 if delta > 0 else -1
    return ta, dega.astype(bool)
