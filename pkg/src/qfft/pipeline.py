"""Staged radix-2 decimation-in-time processor with per-stage quantize
units.

An N-point transform runs as m = log2(N) butterfly stages over a
bit-reversed copy of the input (natural-order output). Each stage owns a
statically preset quantizer that is applied to both butterfly outputs
after the add/subtract, and may additionally quantize its twiddle table
once at build time (a quantized coefficient ROM). Inverse runs scale the
input by 1/N and use conjugated twiddles, so an exact forward/inverse pair
round-trips to the identity.

Every run also executes an exact shadow of the same stage sequence and
records the per-stage maximum deviation from it, plus tallies of complex
multiplies, complex additions and saturation events.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .core import as_signal_block, bit_reverse_indices, build_twiddle_table, is_power_of_two
from .quantization import (
    FloatQuantizerSpec,
    QuantizerSpec,
    UniformQuantizerSpec,
    quantize_float_array,
    quantize_uniform_array,
)


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True)
class StageConfig:
    """One butterfly stage.

    data_quantizer=None leaves the stage exact. quantize_twiddles routes
    the stage's twiddle table through twiddle_quantizer (falling back to
    data_quantizer) once at build time.
    """

    data_quantizer: Optional[QuantizerSpec] = None
    quantize_twiddles: bool = False
    twiddle_quantizer: Optional[QuantizerSpec] = None


@dataclass(frozen=True)
class PipelineConfig:
    n_size: int
    direction: Direction = Direction.FORWARD
    stages: Tuple[StageConfig, ...] = ()

    def __post_init__(self):
        if not is_power_of_two(self.n_size) or not 2 <= self.n_size <= (1 << 20):
            raise ValueError(
                f"transform size must be a power of two in [2, 2**20], got {self.n_size}")
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "stages", tuple(self.stages))
        m = self.n_size.bit_length() - 1
        if len(self.stages) != m:
            raise ValueError(
                f"expected {m} stage configs for a {self.n_size}-point pipeline, "
                f"got {len(self.stages)}")


def exact_config(n_size: int, direction=Direction.FORWARD) -> PipelineConfig:
    """All-exact pipeline configuration (no quantize units)."""
    m = n_size.bit_length() - 1
    return PipelineConfig(n_size=n_size, direction=direction,
                          stages=tuple(StageConfig() for _ in range(m)))


@dataclass
class OpCounters:
    complex_multiplies: int = 0
    complex_additions: int = 0


@dataclass(frozen=True)
class PipelineRun:
    output: np.ndarray
    counters: OpCounters
    per_stage_error: np.ndarray
    saturation_events: int


def _quantize_table(factors: np.ndarray, spec: QuantizerSpec) -> np.ndarray:
    if isinstance(spec, UniformQuantizerSpec):
        re, _ = quantize_uniform_array(factors.real, spec)
        im, _ = quantize_uniform_array(factors.imag, spec)
    elif isinstance(spec, FloatQuantizerSpec):
        re = quantize_float_array(factors.real, spec)
        im = quantize_float_array(factors.imag, spec)
    else:
        raise TypeError(f"unknown quantizer spec {spec!r}")
    return re + 1j * im


class Pipeline:
    """Immutable built pipeline; share freely across concurrent runs."""

    def __init__(self, config: PipelineConfig):
        if not isinstance(config, PipelineConfig):
            raise TypeError("build_pipeline expects a PipelineConfig")
        self.config = config
        self.n_size = config.n_size
        self.n_stages = len(config.stages)
        self.direction = config.direction

        n = self.n_size
        conj = self.direction is Direction.INVERSE
        w_exact = np.empty(n - 1, dtype=np.complex128)
        w_eff = np.empty(n - 1, dtype=np.complex128)
        for s, stage in enumerate(config.stages):
            half = 1 << s
            table = build_twiddle_table(2 * half, conjugated=conj)
            factors = table.factors
            w_exact[half - 1:2 * half - 1] = factors
            if stage.quantize_twiddles:
                spec = stage.twiddle_quantizer or stage.data_quantizer
                if spec is None:
                    raise ValueError(
                        f"stage {s} sets quantize_twiddles but carries no quantizer")
                factors = _quantize_table(factors, spec)
            w_eff[half - 1:2 * half - 1] = factors

        kinds = np.zeros(self.n_stages, dtype=np.intc)
        qs = np.zeros(self.n_stages, dtype=np.float64)
        xmaxs = np.zeros(self.n_stages, dtype=np.float64)
        for s, stage in enumerate(config.stages):
            spec = stage.data_quantizer
            if spec is None:
                continue
            if isinstance(spec, UniformQuantizerSpec):
                kinds[s] = 1
                qs[s] = spec.q
                xmaxs[s] = spec.x_max
            elif isinstance(spec, FloatQuantizerSpec):
                kinds[s] = 2
                qs[s] = spec.q
            else:
                raise TypeError(f"unknown quantizer spec {spec!r}")

        self._bitrev = bit_reverse_indices(n)
        self._w_re = np.ascontiguousarray(w_eff.real)
        self._w_im = np.ascontiguousarray(w_eff.imag)
        self._wx_re = np.ascontiguousarray(w_exact.real)
        self._wx_im = np.ascontiguousarray(w_exact.imag)
        self._kinds = kinds
        self._qs = qs
        self._xmaxs = xmaxs
        for arr in (self._bitrev, self._w_re, self._w_im, self._wx_re,
                    self._wx_im, self._kinds, self._qs, self._xmaxs):
            arr.flags.writeable = False


def build_pipeline(config: PipelineConfig) -> Pipeline:
    """Precompute twiddle tables (conjugated for inverse runs, quantized
    where enabled) and stage routing for the given configuration."""
    return Pipeline(config)


def run_pipeline(pipeline: Pipeline, x) -> PipelineRun:
    """Run one transform through the staged pipeline.

    Forward: staged radix-2 DIT FFT of x. Inverse: x is scaled by 1/N at
    the input and the conjugate-twiddle stages produce the inverse
    transform. Output ordering is natural.
    """
    arr = as_signal_block(x)
    if arr.size != pipeline.n_size:
        raise ValueError(
            f"input length {arr.size} does not match pipeline size {pipeline.n_size}")
    z = arr.astype(np.complex128, copy=True)
    if pipeline.direction is Direction.INVERSE:
        z /= pipeline.n_size
    z = z[pipeline._bitrev]
    xre = np.ascontiguousarray(z.real)
    xim = np.ascontiguousarray(z.imag)
    mults, adds, sats, errs = kernels.run_stages(
        xre, xim,
        pipeline._w_re, pipeline._w_im,
        pipeline._wx_re, pipeline._wx_im,
        pipeline._kinds, pipeline._qs, pipeline._xmaxs)
    return PipelineRun(
        output=xre + 1j * xim,
        counters=OpCounters(complex_multiplies=int(mults),
                            complex_additions=int(adds)),
        per_stage_error=errs,
        saturation_events=int(sats),
    )


def run_roundtrip(pipeline_fwd: Pipeline, pipeline_inv: Pipeline, x) -> PipelineRun:
    """Forward transform then inverse transform of the result.

    Returns the inverse run; its output is the round-trip reconstruction
    whose residual against the original x is the system error analyzed by
    the measurement harness.
    """
    if pipeline_fwd.n_size != pipeline_inv.n_size:
        raise ValueError(
            f"pipeline size mismatch: {pipeline_fwd.n_size} vs {pipeline_inv.n_size}")
    if pipeline_fwd.direction is not Direction.FORWARD:
        raise ValueError("first pipeline must be a forward pipeline")
    if pipeline_inv.direction is not Direction.INVERSE:
        raise ValueError("second pipeline must be an inverse pipeline")
    fwd = run_pipeline(pipeline_fwd, x)
    return run_pipeline(pipeline_inv, fwd.output)
