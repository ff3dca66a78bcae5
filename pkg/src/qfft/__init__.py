"""qfft: bit-accurate staged radix-2 FFT/IFFT simulation with per-stage
quantization and a quantization-noise measurement harness."""

__version__ = "0.1.0"

from .analysis import (
    DispersionStats,
    InputSweepRow,
    QuantizerNoiseReport,
    SweepRow,
    least_squares_slope,
    measure_dispersion,
    percent_error,
    quantizer_noise_stats,
    sqnr_measured,
    stage_plan,
    sweep_bits,
    sweep_input,
    uniform_signal_source,
)
from .core import (
    TwiddleTable,
    as_signal_block,
    bit_reverse_indices,
    build_twiddle_table,
    butterfly_dit,
    dft_direct,
    idft_direct,
    radix_p_decompose,
    twiddle_factor,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .pipeline import (
    Direction,
    OpCounters,
    Pipeline,
    PipelineConfig,
    PipelineRun,
    StageConfig,
    build_pipeline,
    exact_config,
    run_pipeline,
    run_roundtrip,
)
from .quantization import (
    FloatDecomposition,
    FloatQuantizerSpec,
    QuantizationError,
    UniformQuantizerSpec,
    decompose_float,
    quantization_error,
    quantize_complex,
    quantize_float,
    quantize_float_array,
    quantize_uniform,
    quantize_uniform_array,
    snr_db,
    theoretical_variance_float,
    theoretical_variance_uniform,
    uniform_saturates,
)

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    "DispersionStats",
    "InputSweepRow",
    "QuantizerNoiseReport",
    "SweepRow",
    "least_squares_slope",
    "measure_dispersion",
    "percent_error",
    "quantizer_noise_stats",
    "sqnr_measured",
    "stage_plan",
    "sweep_bits",
    "sweep_input",
    "uniform_signal_source",
    "TwiddleTable",
    "as_signal_block",
    "bit_reverse_indices",
    "build_twiddle_table",
    "butterfly_dit",
    "dft_direct",
    "idft_direct",
    "radix_p_decompose",
    "twiddle_factor",
    "Direction",
    "OpCounters",
    "Pipeline",
    "PipelineConfig",
    "PipelineRun",
    "StageConfig",
    "build_pipeline",
    "exact_config",
    "run_pipeline",
    "run_roundtrip",
    "FloatDecomposition",
    "FloatQuantizerSpec",
    "QuantizationError",
    "UniformQuantizerSpec",
    "decompose_float",
    "quantization_error",
    "quantize_complex",
    "quantize_float",
    "quantize_float_array",
    "quantize_uniform",
    "quantize_uniform_array",
    "snr_db",
    "theoretical_variance_float",
    "theoretical_variance_uniform",
    "uniform_saturates",
]
