"""Statistical harness: error dispersion, percent error, measured SQNR,
and the bit-resolution / input-size sweeps.

All statistics use the population convention (divide by n, matching the
expectation operator behind the closed-form noise variances). Sweeps are
deterministic given the signal-source seed: the same trial inputs are
reused across every swept bit width, so columns are paired sample sets.

For forward sweeps the error reference is the definitional DFT of the
same input (the idle processor); for inverse sweeps the quantized
forward/inverse round trip is compared against the original time-domain
input.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .core import dft_direct
from .pipeline import (
    Direction,
    PipelineConfig,
    StageConfig,
    build_pipeline,
    run_pipeline,
    run_roundtrip,
)
from .quantization import (
    FloatQuantizerSpec,
    UniformQuantizerSpec,
    quantize_float_array,
    quantize_uniform_array,
    theoretical_variance_float,
    theoretical_variance_uniform,
)

SignalSource = Callable[[int], np.ndarray]

QUANTIZER_KINDS = ("uniform", "float", "exact")


@dataclass(frozen=True)
class DispersionStats:
    mean: float
    std_dev: float
    variance: float
    n_samples: int


@dataclass(frozen=True)
class SweepRow:
    bits: int
    mean_error: float
    std_error: float
    var_error: float
    percent_error: float
    sqnr_db: float


@dataclass(frozen=True)
class InputSweepRow:
    n_size: int
    stats: DispersionStats
    percent_error: float


@dataclass(frozen=True)
class QuantizerNoiseReport:
    kind: str
    bits: int
    n_samples: int
    stats: DispersionStats
    sqnr_db: float
    theory_var: float


def measure_dispersion(samples) -> DispersionStats:
    """Population mean / variance / standard deviation of a sample set."""
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("cannot measure dispersion of an empty sample set")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample set contains non-finite values")
    mean = float(np.mean(arr))
    variance = float(np.mean((arr - mean) ** 2))
    return DispersionStats(mean=mean, std_dev=math.sqrt(variance),
                           variance=variance, n_samples=int(arr.size))


def percent_error(actual, reference) -> float:
    """100 * ||actual - reference||_2 / ||reference||_2."""
    a = np.asarray(actual, dtype=np.complex128).ravel()
    r = np.asarray(reference, dtype=np.complex128).ravel()
    if a.size != r.size:
        raise ValueError(f"length mismatch: {a.size} vs {r.size}")
    ref_norm = float(np.linalg.norm(r))
    if ref_norm == 0.0:
        raise ValueError("reference block has zero energy")
    return 100.0 * float(np.linalg.norm(a - r)) / ref_norm


def _components(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def sqnr_measured(quantized, reference) -> float:
    """10*log10 of reference variance over error variance, both taken
    over the pooled re/im components. An exactly zero error variance
    returns +inf (exact-match sentinel)."""
    q = np.asarray(quantized, dtype=np.complex128).ravel()
    r = np.asarray(reference, dtype=np.complex128).ravel()
    if q.size != r.size:
        raise ValueError(f"length mismatch: {q.size} vs {r.size}")
    signal_var = float(np.var(_components(r)))
    if signal_var <= 0.0:
        raise ValueError("reference has zero variance")
    noise_var = float(np.var(_components(q - r)))
    if noise_var == 0.0:
        return math.inf
    return 10.0 * math.log10(signal_var / noise_var)


def uniform_signal_source(seed: int, complex_parts: bool = False,
                          amplitude: float = 1.0) -> SignalSource:
    """Seeded i.i.d. uniform samples on [-amplitude, amplitude]; the
    imaginary part is zero unless complex_parts is set."""
    if not (amplitude > 0.0 and math.isfinite(amplitude)):
        raise ValueError(f"amplitude must be positive and finite, got {amplitude!r}")
    rng = np.random.default_rng(seed)

    def source(n: int) -> np.ndarray:
        re = rng.uniform(-amplitude, amplitude, n)
        im = rng.uniform(-amplitude, amplitude, n) if complex_parts else np.zeros(n)
        return re + 1j * im

    return source


def _stage_quantizer(kind: str, bits: int, stage_index: int):
    if kind == "exact":
        return None
    if kind == "uniform":
        # Binary-weighted full scale: stage s output magnitudes stay
        # within 2**(s+1) for unit-amplitude input.
        return UniformQuantizerSpec(bits=bits, x_max=2.0 ** (stage_index + 1))
    if kind == "float":
        return FloatQuantizerSpec(mantissa_bits=bits)
    raise ValueError(f"unknown quantizer kind {kind!r}")


def stage_plan(kind: str, bits: int, n_stages: int,
               quantize_twiddles: bool = False) -> Tuple[StageConfig, ...]:
    """Per-stage quantizer assignment used by the sweep harness and CLI."""
    if kind not in QUANTIZER_KINDS:
        raise ValueError(f"unknown quantizer kind {kind!r}")
    return tuple(
        StageConfig(data_quantizer=_stage_quantizer(kind, bits, s),
                    quantize_twiddles=quantize_twiddles)
        for s in range(n_stages))


def _template_policy(template: PipelineConfig) -> Tuple[str, int, bool]:
    """Recover (kind, bits, quantize_twiddles) from a template's stage 0."""
    stage = template.stages[0]
    spec = stage.data_quantizer
    if spec is None:
        return "exact", 0, stage.quantize_twiddles
    if isinstance(spec, UniformQuantizerSpec):
        return "uniform", spec.bits, stage.quantize_twiddles
    return "float", spec.mantissa_bits, stage.quantize_twiddles


def _run_error_set(n: int, direction: Direction, stages, inputs, refs):
    """Transform every input and return (outputs, pooled error components)."""
    if direction is Direction.FORWARD:
        pipe = build_pipeline(PipelineConfig(n, Direction.FORWARD, stages))
        outs = [run_pipeline(pipe, x).output for x in inputs]
    else:
        fwd = build_pipeline(PipelineConfig(n, Direction.FORWARD, stages))
        inv = build_pipeline(PipelineConfig(n, Direction.INVERSE, stages))
        outs = [run_roundtrip(fwd, inv, x).output for x in inputs]
    err = np.concatenate([_components(o - r) for o, r in zip(outs, refs)])
    return outs, err


def sweep_bits(bits_values: Iterable[int], kind: str, template: PipelineConfig,
               signal_source: SignalSource, trials: int) -> List[SweepRow]:
    """One SweepRow per bit width: all stages carry the chosen quantizer
    at that width, `trials` seeded transforms are run and their error
    statistics aggregated."""
    bits_list = sorted(set(int(b) for b in bits_values))
    if not bits_list:
        raise ValueError("empty bit range")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if kind not in QUANTIZER_KINDS:
        raise ValueError(f"unknown quantizer kind {kind!r}")

    n = template.n_size
    m = len(template.stages)
    qt_flags = [st.quantize_twiddles for st in template.stages]
    inputs = [signal_source(n) for _ in range(trials)]
    if template.direction is Direction.FORWARD:
        refs = [dft_direct(x) for x in inputs]
    else:
        refs = inputs
    big_ref = np.concatenate(refs)

    rows = []
    for b in bits_list:
        stages = tuple(
            StageConfig(data_quantizer=_stage_quantizer(kind, b, s),
                        quantize_twiddles=qt_flags[s])
            for s in range(m))
        outs, err = _run_error_set(n, template.direction, stages, inputs, refs)
        stats = measure_dispersion(err)
        pct = float(np.mean([percent_error(o, r) for o, r in zip(outs, refs)]))
        sqnr = sqnr_measured(np.concatenate(outs), big_ref)
        rows.append(SweepRow(bits=b, mean_error=stats.mean,
                             std_error=stats.std_dev, var_error=stats.variance,
                             percent_error=pct, sqnr_db=sqnr))
    return rows


def sweep_input(template: PipelineConfig, n_sizes: Sequence[int],
                signal_source: SignalSource, trials: int) -> List[InputSweepRow]:
    """Rebuild the pipeline at each size (same quantizer kind/bits policy
    as the template) and aggregate error statistics per size."""
    if not n_sizes:
        raise ValueError("empty size list")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    kind, bits, qt = _template_policy(template)

    rows = []
    for n in n_sizes:
        m = int(n).bit_length() - 1
        stages = stage_plan(kind, bits, m, quantize_twiddles=qt)
        inputs = [signal_source(n) for _ in range(trials)]
        if template.direction is Direction.FORWARD:
            refs = [dft_direct(x) for x in inputs]
        else:
            refs = inputs
        outs, err = _run_error_set(n, template.direction, stages, inputs, refs)
        stats = measure_dispersion(err)
        pct = float(np.mean([percent_error(o, r) for o, r in zip(outs, refs)]))
        rows.append(InputSweepRow(n_size=int(n), stats=stats, percent_error=pct))
    return rows


def quantizer_noise_stats(kind: str, bits: int, n_samples: int,
                          seed: int, x_max: float = 1.0) -> QuantizerNoiseReport:
    """Monte Carlo noise figures for one raw quantizer (no transform).

    Uniform: full-scale uniform input, error h = x - Q(x), theory q^2/12.
    Float: mantissas uniform on [1/2, 1), relative error (Q(x) - x)/x,
    theory q^2/6.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        spec = UniformQuantizerSpec(bits=bits, x_max=x_max)
        x = rng.uniform(-spec.x_max, spec.x_max, n_samples)
        y, _ = quantize_uniform_array(x, spec)
        err = x - y
        theory = theoretical_variance_uniform(spec)
    elif kind == "float":
        spec = FloatQuantizerSpec(mantissa_bits=bits)
        x = rng.uniform(0.5, 1.0, n_samples)
        y = quantize_float_array(x, spec)
        err = (y - x) / x
        theory = theoretical_variance_float(spec)
    else:
        raise ValueError(f"quantizer noise stats need kind uniform or float, got {kind!r}")
    stats = measure_dispersion(err)
    signal_var = float(np.var(x))
    noise_var = float(np.var(x - y))
    sqnr = math.inf if noise_var == 0.0 else 10.0 * math.log10(signal_var / noise_var)
    return QuantizerNoiseReport(kind=kind, bits=bits, n_samples=n_samples,
                                stats=stats, sqnr_db=sqnr, theory_var=theory)


def least_squares_slope(xs, ys) -> float:
    """Slope of the degree-1 least-squares fit of ys against xs."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size != ys.size or xs.size < 2:
        raise ValueError("slope needs two equally sized samples of length >= 2")
    return float(np.polyfit(xs, ys, 1)[0])


def theory_variance_for(kind: str, bits: int) -> float:
    """Closed-form noise variance column for sweep tables (unit full scale)."""
    if kind == "uniform":
        return theoretical_variance_uniform(UniformQuantizerSpec(bits=bits, x_max=1.0))
    if kind == "float":
        return theoretical_variance_float(FloatQuantizerSpec(mantissa_bits=bits))
    if kind == "exact":
        return 0.0
    raise ValueError(f"unknown quantizer kind {kind!r}")
