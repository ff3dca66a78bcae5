"""Transform mathematics: twiddle factors, bit reversal, the radix-2
butterfly, the definitional DFT/IDFT used as correctness oracle, and the
general radix-p decimation-in-time decomposition.

Conventions
-----------
A complex sample is a Python ``complex`` (or numpy complex128 scalar); a
signal block is a 1-D complex128 ndarray whose length is a power of two in
[2, 2**20]. The forward transform uses the root W_N = exp(-2j*pi/N); the
inverse uses its conjugate plus a 1/N scale. All arithmetic here is plain
double precision, quantization never happens in this module.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

MAX_BLOCK_SIZE = 1 << 20


def is_power_of_two(n) -> bool:
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def as_signal_block(samples) -> np.ndarray:
    """Validate and return a signal block as a 1-D complex128 array.

    Rejects non-1-D input, lengths that are not powers of two in
    [2, 2**20], and non-finite components.
    """
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"signal block must be 1-D, got shape {arr.shape}")
    n = arr.size
    if not is_power_of_two(n) or not 2 <= n <= MAX_BLOCK_SIZE:
        raise ValueError(
            f"signal block length must be a power of two in [2, 2**20], got {n}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("signal block contains non-finite samples")
    return arr


def twiddle_factor(n_size: int, k: int) -> complex:
    """Return W_N^k = exp(-2j*pi*k/N) for 0 <= k < N, N a power of two."""
    if not is_power_of_two(n_size):
        raise ValueError(f"transform size must be a power of two, got {n_size}")
    if not 0 <= k < n_size:
        raise ValueError(f"twiddle index {k} out of range [0, {n_size})")
    theta = 2.0 * math.pi * k / n_size
    return complex(math.cos(theta), -math.sin(theta))


@dataclass(frozen=True)
class TwiddleTable:
    """First half circle of roots W_N^k, k = 0 .. N/2 - 1.

    conjugated=True stores the conjugate roots used by inverse transforms.
    """

    n_size: int
    factors: np.ndarray
    conjugated: bool = False

    def __post_init__(self):
        if not is_power_of_two(self.n_size):
            raise ValueError(f"table size must be a power of two, got {self.n_size}")
        if self.factors.shape != (self.n_size // 2,):
            raise ValueError("twiddle table must hold exactly N/2 factors")
        if self.factors[0] != 1.0 + 0.0j:
            raise ValueError("twiddle table must start at exactly 1+0j")
        if np.max(np.abs(np.abs(self.factors) - 1.0)) > 1e-12:
            raise ValueError("twiddle factors must have unit magnitude")


def build_twiddle_table(n_size: int, conjugated: bool = False) -> TwiddleTable:
    if not is_power_of_two(n_size) or n_size < 2:
        raise ValueError(f"transform size must be a power of two >= 2, got {n_size}")
    theta = 2.0 * np.pi * np.arange(n_size // 2) / n_size
    sign = 1.0 if conjugated else -1.0
    factors = np.cos(theta) + 1j * (sign * np.sin(theta))
    return TwiddleTable(n_size=n_size, factors=factors, conjugated=conjugated)


def bit_reverse_indices(n_size: int) -> np.ndarray:
    """Permutation mapping each index to its log2(N)-bit reversal.

    Applying it twice is the identity.
    """
    if not is_power_of_two(n_size):
        raise ValueError(f"transform size must be a power of two, got {n_size}")
    bits = n_size.bit_length() - 1
    idx = np.arange(n_size, dtype=np.intp)
    rev = np.zeros(n_size, dtype=np.intp)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def _check_finite_sample(z: complex, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def butterfly_dit(a: complex, b: complex, w: complex, counters=None):
    """Radix-2 decimation-in-time butterfly: (a + w*b, a - w*b).

    One complex multiply and two complex additions; when a counter object
    with complex_multiplies / complex_additions attributes is passed the
    tallies are bumped accordingly.
    """
    a = _check_finite_sample(a, "butterfly input a")
    b = _check_finite_sample(b, "butterfly input b")
    w = _check_finite_sample(w, "butterfly twiddle w")
    t = w * b
    if counters is not None:
        counters.complex_multiplies += 1
        counters.complex_additions += 2
    return a + t, a - t


def _dft_root_table(n: int, sign: float):
    theta = 2.0 * np.pi * np.arange(n) / n
    return np.cos(theta), sign * np.sin(theta)


def dft_direct(x) -> np.ndarray:
    """Definitional transform X[k] = sum_n x[n] * W_N^{kn}.

    The literal O(N^2) product-sum; this is the oracle every fast path in
    the package is tested against.
    """
    arr = as_signal_block(x)
    wre, wim = _dft_root_table(arr.size, -1.0)
    yre, yim = kernels.dft_direct(
        np.ascontiguousarray(arr.real), np.ascontiguousarray(arr.imag), wre, wim)
    return yre + 1j * yim


def idft_direct(x) -> np.ndarray:
    """Definitional inverse x[n] = (1/N) * sum_k X[k] * conj(W_N)^{kn}."""
    arr = as_signal_block(x)
    n = arr.size
    wre, wim = _dft_root_table(n, 1.0)
    yre, yim = kernels.dft_direct(
        np.ascontiguousarray(arr.real), np.ascontiguousarray(arr.imag), wre, wim)
    return (yre + 1j * yim) / n


def radix_p_decompose(x, p: int) -> np.ndarray:
    """Compute the DFT by the general radix-p decimation-in-time split.

    Each level decimates the input into p interleaved subsequences,
    transforms them recursively, and recombines with the inner rotation
    W_p^{jr} * W_N^{jk}:

        X[k + r*(N/p)] = sum_j S_j[k] * W_p^{jr} * W_N^{jk}

    where S_j is the (recursive) transform of x[p*n + j]. Recursion
    bottoms out at the definitional DFT of size p (or smaller when p no
    longer divides the block).
    """
    if p not in (2, 4):
        raise ValueError(f"radix must be 2 or 4, got {p}")
    arr = as_signal_block(x)
    if arr.size % p != 0:
        raise ValueError(f"radix {p} does not divide block length {arr.size}")
    return _radix_split(arr, p)


def _radix_split(x: np.ndarray, p: int) -> np.ndarray:
    n = x.size
    if n == p or n % p != 0:
        return dft_direct(x)
    subs = [_radix_split(np.ascontiguousarray(x[j::p]), p) for j in range(p)]
    n_sub = n // p
    k = np.arange(n_sub)
    out = np.empty(n, dtype=np.complex128)
    for r in range(p):
        acc = np.zeros(n_sub, dtype=np.complex128)
        for j in range(p):
            w_p = np.exp(-2j * np.pi * j * r / p)
            w_n = np.exp(-2j * np.pi * j * k / n)
            acc += subs[j] * (w_p * w_n)
        out[r * n_sub:(r + 1) * n_sub] = acc
    return out
