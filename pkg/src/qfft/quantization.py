"""The two quantizer models and their closed-form noise figures.

Uniform model: values are rounded to the nearest multiple of the interval
q = 2 * x_max * 2**-b (half away from zero) and saturated to the full
scale [-x_max, x_max]; the round-off error h = x - Q(x) has theoretical
variance q**2 / 12 = (1/3) * x_max**2 * 2**(-2b) for full-scale uniform
input.

Floating-point model: a compressor splits x into sign * 2**e * M with
mantissa M in [1/2, 1), a uniform quantizer rounds M to the nearest
multiple of q = 2**-b, and an expander recomposes. The relative error
eps = (Q(x) - x) / x = alpha / M has theoretical variance q**2 / 6.

Rounding at exact midpoints is half-away-from-zero so that both models
satisfy Q(-x) = -Q(x) exactly.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels


@dataclass(frozen=True)
class UniformQuantizerSpec:
    """Fixed-point style quantizer: b bits across the full scale +-x_max."""

    bits: int
    x_max: float = 1.0

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < 1:
            raise ValueError(f"bits must be a positive integer, got {self.bits!r}")
        if not (math.isfinite(self.x_max) and self.x_max > 0):
            raise ValueError(f"x_max must be a positive finite real, got {self.x_max!r}")

    @property
    def q(self) -> float:
        """Quantization interval, 2 * x_max * 2**-bits."""
        return 2.0 * self.x_max * 2.0 ** -self.bits

    @property
    def num_levels(self) -> int:
        return 1 << self.bits


@dataclass(frozen=True)
class FloatQuantizerSpec:
    """Mantissa quantizer with step q = 2**-mantissa_bits.

    mantissa_bits = 0 (q = 1) is allowed; it collapses every mantissa in
    [1/2, 1) onto 1 and exists for the coarse end of noise sweeps.
    """

    mantissa_bits: int

    def __post_init__(self):
        if not isinstance(self.mantissa_bits, int) or self.mantissa_bits < 0:
            raise ValueError(
                f"mantissa_bits must be a non-negative integer, got {self.mantissa_bits!r}")

    @property
    def q(self) -> float:
        """Mantissa step, exactly 2**-mantissa_bits."""
        return 2.0 ** -self.mantissa_bits


QuantizerSpec = Union[UniformQuantizerSpec, FloatQuantizerSpec]


@dataclass(frozen=True)
class FloatDecomposition:
    """Compressor output: |x| = 2**exponent * mantissa, mantissa in [1/2, 1)."""

    exponent: int
    mantissa: float
    sign: int

    def recompose(self) -> float:
        return self.sign * math.ldexp(self.mantissa, self.exponent)


@dataclass(frozen=True)
class QuantizationError:
    """Error record for one quantized value.

    absolute is h = x - Q(x). alpha is the error in the compressed domain
    (Q(M) - M for the mantissa model; Q(x) - x for the uniform model,
    whose compressor is the identity) and relative is alpha divided by the
    compressed value.
    """

    absolute: float
    relative: float
    alpha: float


def _require_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def quantize_uniform(x: float, spec: UniformQuantizerSpec) -> float:
    """Nearest multiple of spec.q, half away from zero, saturated to
    [-x_max, x_max]."""
    x = _require_finite(x)
    out, _ = kernels.quantize_uniform_block(np.array([x]), spec.q, spec.x_max)
    return float(out[0])


def uniform_saturates(x: float, spec: UniformQuantizerSpec) -> bool:
    """True when quantizing x clamps it to the full scale."""
    x = _require_finite(x)
    _, n_sat = kernels.quantize_uniform_block(np.array([x]), spec.q, spec.x_max)
    return n_sat > 0


def quantize_uniform_array(values, spec: UniformQuantizerSpec):
    """Vectorized uniform quantizer; returns (values, n_saturated)."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    return kernels.quantize_uniform_block(arr, spec.q, spec.x_max)


def decompose_float(x: float) -> FloatDecomposition:
    """Split x into sign * 2**e * M with M in [1/2, 1); 0 maps to (0, 0, +1)."""
    x = _require_finite(x)
    if x == 0.0:
        return FloatDecomposition(exponent=0, mantissa=0.0, sign=1)
    m, e = math.frexp(x)
    return FloatDecomposition(exponent=e, mantissa=abs(m), sign=-1 if x < 0 else 1)


def quantize_float(x: float, spec: FloatQuantizerSpec) -> float:
    """Compressor -> uniform mantissa quantizer -> expander."""
    x = _require_finite(x)
    out = kernels.quantize_float_block(np.array([x]), spec.q)
    return float(out[0])


def quantize_float_array(values, spec: FloatQuantizerSpec) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.float64)
    return kernels.quantize_float_block(arr, spec.q)


def quantize_value(x: float, spec: QuantizerSpec) -> float:
    if isinstance(spec, UniformQuantizerSpec):
        return quantize_uniform(x, spec)
    if isinstance(spec, FloatQuantizerSpec):
        return quantize_float(x, spec)
    raise TypeError(f"unknown quantizer spec {spec!r}")


def quantize_complex(z: complex, spec: QuantizerSpec) -> complex:
    """Quantize re and im independently with the chosen model."""
    z = complex(z)
    return complex(quantize_value(z.real, spec), quantize_value(z.imag, spec))


def quantization_error(x: float, spec: QuantizerSpec) -> QuantizationError:
    x = _require_finite(x)
    qx = quantize_value(x, spec)
    h = x - qx
    if isinstance(spec, FloatQuantizerSpec):
        if x == 0.0:
            return QuantizationError(absolute=0.0, relative=0.0, alpha=0.0)
        d = decompose_float(x)
        # Q(M) recovered from the expander output keeps alpha consistent
        # with the recomposition arithmetic (exact power-of-two division).
        qm = abs(qx) / math.ldexp(1.0, d.exponent)
        alpha = qm - d.mantissa
        rel = alpha / d.mantissa
    else:
        alpha = qx - x
        rel = alpha / x if x != 0.0 else 0.0
    return QuantizationError(absolute=h, relative=rel, alpha=alpha)


def theoretical_variance_uniform(spec: UniformQuantizerSpec) -> float:
    """Round-off error variance q**2 / 12 (full-scale uniform input)."""
    return spec.q ** 2 / 12.0


def theoretical_variance_float(spec: FloatQuantizerSpec) -> float:
    """Relative-error variance q**2 / 6 for mantissas uniform on [1/2, 1)."""
    return spec.q ** 2 / 6.0


def snr_db(signal_variance: float, noise_variance: float) -> float:
    """10 * log10(signal variance / noise variance)."""
    if not (signal_variance > 0.0):
        raise ValueError(f"signal variance must be positive, got {signal_variance!r}")
    if not (noise_variance > 0.0):
        raise ValueError(f"noise variance must be positive, got {noise_variance!r}")
    return 10.0 * math.log10(signal_variance / noise_variance)
