# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C kernels for the hot loops: definitional DFT summation, the staged
butterfly pipeline, and block quantizers.

Same call contract as qfft.kernels._numpy; see that module for the
reference semantics. All arrays are C-contiguous float64, complex data is
carried as separate re/im arrays.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, floor, copysign, frexp, ldexp, sqrt

cnp.import_array()


cdef inline double _round_half_away(double v) noexcept nogil:
    return copysign(floor(fabs(v) + 0.5), v)


def quantize_uniform_block(const double[::1] x, double q, double x_max):
    """Round each element to the nearest multiple of q (half away from
    zero) and clamp to [-x_max, x_max]. Returns (values, n_saturated)."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef cnp.ndarray out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef long sat = 0
    cdef double y
    for i in range(n):
        y = _round_half_away(x[i] / q) * q
        if fabs(y) > x_max:
            sat += 1
            y = x_max if y > 0.0 else -x_max
        o[i] = y
    return out, sat


def quantize_float_block(const double[::1] x, double q):
    """Quantize only the mantissa of each element to the nearest multiple
    of q, leaving sign and exponent untouched."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef cnp.ndarray out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double m
    cdef int e
    for i in range(n):
        m = frexp(x[i], &e)
        o[i] = ldexp(_round_half_away(m / q) * q, e)
    return out


def dft_direct(const double[::1] xre, const double[::1] xim,
               const double[::1] wre, const double[::1] wim):
    """Definitional O(N^2) transform: y[k] = sum_n x[n] * w[(k*n) mod N].

    The caller supplies the full-circle root table w (sign convention
    baked in), so forward and inverse share this loop.
    """
    cdef Py_ssize_t k, j, idx, n = xre.shape[0]
    cdef cnp.ndarray yre = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray yim = np.empty(n, dtype=np.float64)
    cdef double[::1] _yre = yre
    cdef double[::1] _yim = yim
    cdef double ar, ai, wr, wi, xr, xi
    with nogil:
        for k in range(n):
            ar = 0.0
            ai = 0.0
            idx = 0
            for j in range(n):
                wr = wre[idx]
                wi = wim[idx]
                xr = xre[j]
                xi = xim[j]
                ar += xr * wr - xi * wi
                ai += xr * wi + xi * wr
                idx += k
                if idx >= n:
                    idx -= n
            _yre[k] = ar
            _yim[k] = ai
    return yre, yim


def run_stages(double[::1] xre, double[::1] xim,
               const double[::1] wre, const double[::1] wim,
               const double[::1] wre_exact, const double[::1] wim_exact,
               const int[::1] kinds, const double[::1] qs,
               const double[::1] xmaxs):
    """Run the log2(N) butterfly stages in place on bit-reversed data.

    wre/wim hold the effective per-stage twiddles flattened (stage s spans
    [2^s - 1, 2^(s+1) - 1)); wre_exact/wim_exact the unquantized ones used
    by the shadow pass that measures per-stage deviation. kinds[s] selects
    the stage-output quantizer: 0 none, 1 uniform(q, x_max), 2 mantissa(q).

    Returns (complex_multiplies, complex_additions, saturation_events,
    per_stage_error).
    """
    cdef Py_ssize_t n = xre.shape[0]
    cdef Py_ssize_t m = kinds.shape[0]
    cdef cnp.ndarray errs = np.empty(m, dtype=np.float64)
    cdef double[::1] _errs = errs
    cdef cnp.ndarray sre_a = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray sim_a = np.empty(n, dtype=np.float64)
    cdef double[::1] sre = sre_a
    cdef double[::1] sim = sim_a
    cdef Py_ssize_t s, i0, t, i, ia, ib, half, woff
    cdef long long mults = 0, adds = 0
    cdef long sats = 0
    cdef int kind, e
    cdef double wr, wi, ar, ai, br, bi, tr, ti
    cdef double q, xm, y, mant, dr, di, d, emax

    with nogil:
        for i in range(n):
            sre[i] = xre[i]
            sim[i] = xim[i]

        for s in range(m):
            half = 1 << s
            woff = half - 1

            i0 = 0
            while i0 < n:
                for t in range(half):
                    ia = i0 + t
                    ib = ia + half
                    wr = wre[woff + t]
                    wi = wim[woff + t]
                    br = xre[ib]
                    bi = xim[ib]
                    tr = wr * br - wi * bi
                    ti = wr * bi + wi * br
                    ar = xre[ia]
                    ai = xim[ia]
                    xre[ia] = ar + tr
                    xim[ia] = ai + ti
                    xre[ib] = ar - tr
                    xim[ib] = ai - ti
                    mults += 1
                    adds += 2

                    wr = wre_exact[woff + t]
                    wi = wim_exact[woff + t]
                    br = sre[ib]
                    bi = sim[ib]
                    tr = wr * br - wi * bi
                    ti = wr * bi + wi * br
                    ar = sre[ia]
                    ai = sim[ia]
                    sre[ia] = ar + tr
                    sim[ia] = ai + ti
                    sre[ib] = ar - tr
                    sim[ib] = ai - ti
                i0 += 2 * half

            kind = kinds[s]
            if kind == 1:
                q = qs[s]
                xm = xmaxs[s]
                for i in range(n):
                    y = _round_half_away(xre[i] / q) * q
                    if fabs(y) > xm:
                        sats += 1
                        y = xm if y > 0.0 else -xm
                    xre[i] = y
                    y = _round_half_away(xim[i] / q) * q
                    if fabs(y) > xm:
                        sats += 1
                        y = xm if y > 0.0 else -xm
                    xim[i] = y
            elif kind == 2:
                q = qs[s]
                for i in range(n):
                    mant = frexp(xre[i], &e)
                    xre[i] = ldexp(_round_half_away(mant / q) * q, e)
                    mant = frexp(xim[i], &e)
                    xim[i] = ldexp(_round_half_away(mant / q) * q, e)

            emax = 0.0
            for i in range(n):
                dr = xre[i] - sre[i]
                di = xim[i] - sim[i]
                d = sqrt(dr * dr + di * di)
                if d > emax:
                    emax = d
            _errs[s] = emax

    return mults, adds, sats, errs
