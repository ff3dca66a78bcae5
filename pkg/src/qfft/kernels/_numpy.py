"""Pure NumPy kernels: the reference fallback used when the compiled
extension is unavailable (or when QFFT_KERNELS=python).

These define the kernel call contract. Complex data travels as separate
C-contiguous float64 re/im arrays so both backends share one interface.
"""

import numpy as np


def quantize_uniform_block(x, q, x_max):
    """Round each element to the nearest multiple of q (half away from
    zero) and clamp to [-x_max, x_max]. Returns (values, n_saturated)."""
    v = np.asarray(x, dtype=np.float64) / q
    y = np.copysign(np.floor(np.abs(v) + 0.5), v) * q
    n_sat = int(np.count_nonzero(np.abs(y) > x_max))
    if n_sat:
        np.clip(y, -x_max, x_max, out=y)
    return y, n_sat


def quantize_float_block(x, q):
    """Quantize only the mantissa of each element to the nearest multiple
    of q, leaving sign and exponent untouched."""
    mant, expo = np.frexp(np.asarray(x, dtype=np.float64))
    v = mant / q
    qm = np.copysign(np.floor(np.abs(v) + 0.5), v) * q
    return np.ldexp(qm, expo)


def dft_direct(xre, xim, wre, wim):
    """Definitional O(N^2) transform: y[k] = sum_n x[n] * w[(k*n) mod N].

    One explicit loop per output bin; the inner summation is the literal
    product-sum over all N inputs.
    """
    n = xre.shape[0]
    z = xre + 1j * xim
    w = wre + 1j * wim
    yre = np.empty(n)
    yim = np.empty(n)
    ks = np.arange(n)
    for k in range(n):
        acc = np.sum(z * w[(k * ks) % n])
        yre[k] = acc.real
        yim[k] = acc.imag
    return yre, yim


def run_stages(xre, xim, wre, wim, wre_exact, wim_exact, kinds, qs, xmaxs):
    """Run the log2(N) butterfly stages in place on bit-reversed data.

    Mirrors the compiled kernel: main pass uses the effective twiddles and
    per-stage output quantizers; a shadow pass repeats the stage sequence
    with exact twiddles and no quantization, and per_stage_error[s] is the
    max complex deviation between the two after stage s.
    """
    n = xre.shape[0]
    m = len(kinds)
    z = xre + 1j * xim
    sz = z.copy()
    w = np.asarray(wre) + 1j * np.asarray(wim)
    wx = np.asarray(wre_exact) + 1j * np.asarray(wim_exact)
    mults = 0
    adds = 0
    sats = 0
    errs = np.empty(m)

    for s in range(m):
        half = 1 << s
        woff = half - 1
        for target, tw in ((z, w), (sz, wx)):
            stage_w = tw[woff:woff + half]
            view = target.reshape(-1, 2 * half)
            a = view[:, :half]
            b = view[:, half:]
            t = stage_w * b
            upper = a + t
            lower = a - t
            view[:, :half] = upper
            view[:, half:] = lower
        mults += n // 2
        adds += n

        kind = int(kinds[s])
        if kind == 1:
            re_q, s_re = quantize_uniform_block(
                np.ascontiguousarray(z.real), qs[s], xmaxs[s])
            im_q, s_im = quantize_uniform_block(
                np.ascontiguousarray(z.imag), qs[s], xmaxs[s])
            sats += s_re + s_im
            z = re_q + 1j * im_q
        elif kind == 2:
            re_q = quantize_float_block(np.ascontiguousarray(z.real), qs[s])
            im_q = quantize_float_block(np.ascontiguousarray(z.imag), qs[s])
            z = re_q + 1j * im_q

        errs[s] = float(np.max(np.abs(z - sz)))

    xre[:] = z.real
    xim[:] = z.imag
    return mults, adds, sats, errs
