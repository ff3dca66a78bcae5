"""qfft command line: seeded experiments emitting CSV tables.

Commands: transform, sweep-bits, sweep-input, quantizer-stats. Options can
come from a JSON config file (--config) and/or flags; flags override file
values. Output is UTF-8 CSV with LF line endings, a '#' comment header
(tool version, full config echo) and 12-significant-digit decimals.

Exit codes: 0 success, 1 usage/config error, 2 numerical contract
violation during the run.
"""

import argparse
import io
import json
import sys
from dataclasses import dataclass, fields
from typing import List, Optional, Tuple

import numpy as np

from . import __version__
from .analysis import (
    QUANTIZER_KINDS,
    quantizer_noise_stats,
    stage_plan,
    sweep_bits,
    sweep_input,
    theory_variance_for,
    uniform_signal_source,
)
from .core import is_power_of_two
from .pipeline import (
    Direction,
    PipelineConfig,
    StageConfig,
    build_pipeline,
    run_pipeline,
)


class ConfigError(Exception):
    """Invalid usage or configuration; maps to exit code 1."""


COMMANDS = ("transform", "sweep-bits", "sweep-input", "quantizer-stats")

SWEEP_BITS_COLUMNS = ("bits", "mean_error", "std_error", "var_error",
                      "percent_error", "sqnr_db", "theory_var")
SWEEP_INPUT_COLUMNS = ("n", "mean_error", "std_error", "var_error", "percent_error")
TRANSFORM_COLUMNS = ("k", "re", "im")
QUANTIZER_STATS_COLUMNS = ("kind", "bits", "n_samples", "mean_error", "std_error",
                           "var_error", "theory_var", "sqnr_db")


@dataclass
class ExperimentConfig:
    command: str = "transform"
    n: int = 1024
    direction: str = "forward"
    quantizer: str = "exact"
    bits: int = 8
    bit_range: Optional[Tuple[int, int]] = None
    quantize_twiddles: bool = False
    n_sizes: Tuple[int, ...] = (8, 32, 128, 512, 1024)
    trials: int = 100
    seed: int = 0
    samples: int = 1_000_000
    amplitude: float = 1.0
    complex_input: bool = False
    impulse: bool = False
    out: Optional[str] = None

    def to_mapping(self) -> dict:
        d = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = list(v)
            d[f.name] = v
        return d


_FIELD_NAMES = tuple(f.name for f in fields(ExperimentConfig))


def _validate(cfg: ExperimentConfig) -> ExperimentConfig:
    if cfg.command not in COMMANDS:
        raise ConfigError(f'"command" must be one of {", ".join(COMMANDS)}, got {cfg.command!r}')
    if not is_power_of_two(cfg.n) or not 2 <= cfg.n <= (1 << 20):
        raise ConfigError(f'"n" must be a power of two in [2, 2**20], got {cfg.n!r}')
    if cfg.direction not in ("forward", "inverse"):
        raise ConfigError(f'"direction" must be forward or inverse, got {cfg.direction!r}')
    if cfg.quantizer not in QUANTIZER_KINDS:
        raise ConfigError(f'"quantizer" must be one of {", ".join(QUANTIZER_KINDS)}, '
                          f'got {cfg.quantizer!r}')
    if not isinstance(cfg.bits, int) or isinstance(cfg.bits, bool) or cfg.bits < 0:
        raise ConfigError(f'"bits" must be a non-negative integer, got {cfg.bits!r}')
    if cfg.quantizer == "uniform" and cfg.bits < 1:
        raise ConfigError('"bits" must be >= 1 for the uniform quantizer')
    if cfg.bit_range is not None:
        lo, hi = cfg.bit_range
        if lo > hi or lo < (1 if cfg.quantizer == "uniform" else 0):
            raise ConfigError(f'"bit_range" must be a non-empty ascending range, '
                              f'got {lo}..{hi}')
    for n in cfg.n_sizes:
        if not is_power_of_two(n) or not 2 <= n <= (1 << 20):
            raise ConfigError(f'"n_sizes" entries must be powers of two in [2, 2**20], '
                              f'got {n!r}')
    if not isinstance(cfg.trials, int) or cfg.trials < 1:
        raise ConfigError(f'"trials" must be a positive integer, got {cfg.trials!r}')
    if not isinstance(cfg.seed, int) or isinstance(cfg.seed, bool) or cfg.seed < 0:
        raise ConfigError(f'"seed" must be a non-negative integer, got {cfg.seed!r}')
    if not isinstance(cfg.samples, int) or cfg.samples < 1:
        raise ConfigError(f'"samples" must be a positive integer, got {cfg.samples!r}')
    if not (isinstance(cfg.amplitude, (int, float)) and cfg.amplitude > 0):
        raise ConfigError(f'"amplitude" must be positive, got {cfg.amplitude!r}')
    if cfg.quantize_twiddles and cfg.quantizer == "exact":
        raise ConfigError('"quantize_twiddles" needs a uniform or float quantizer')
    return cfg


def _parse_bit_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except (ValueError, TypeError):
        raise ConfigError(f'"bit_range" must look like A..B, got {text!r}') from None


def _coerce_file_value(key: str, value):
    if key == "bit_range":
        if value is None:
            return None
        if isinstance(value, str):
            return _parse_bit_range(value)
        if isinstance(value, list) and len(value) == 2:
            return (int(value[0]), int(value[1]))
        raise ConfigError(f'"bit_range" must be [A, B] or "A..B", got {value!r}')
    if key == "n_sizes":
        if not isinstance(value, list) or not value:
            raise ConfigError(f'"n_sizes" must be a non-empty list, got {value!r}')
        return tuple(int(v) for v in value)
    return value


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    out = {}
    for key, value in raw.items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f'unknown config key "{key}"')
        out[key] = _coerce_file_value(key, value)
    return out


def parse_config(file_path: Optional[str] = None, overrides: Optional[dict] = None
                 ) -> ExperimentConfig:
    """Merge defaults <- config file <- explicit overrides and validate."""
    merged = {}
    if file_path:
        merged.update(_load_config_file(file_path))
    for key, value in (overrides or {}).items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f'unknown config key "{key}"')
        merged[key] = _coerce_file_value(key, value)
    cfg = ExperimentConfig(**merged)
    return _validate(cfg)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="qfft", description=__doc__, add_help=True,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", nargs="?", choices=COMMANDS,
                   help="experiment to run (may also come from --config)")
    p.add_argument("--config", metavar="FILE", help="JSON config file")
    p.add_argument("--n", type=int, help="transform size (power of two)")
    p.add_argument("--bits", type=int, help="quantizer bit width")
    p.add_argument("--bit-range", metavar="A..B", help="inclusive bit sweep range")
    p.add_argument("--quantizer", choices=QUANTIZER_KINDS, help="stage quantizer kind")
    p.add_argument("--quantize-twiddles", action="store_true", default=None,
                   help="also quantize the twiddle tables at build time")
    p.add_argument("--inverse", action="store_true", default=None,
                   help="run the inverse transform (round trip in sweeps)")
    p.add_argument("--trials", type=int, help="transforms per sweep point")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--samples", type=int, help="sample count for quantizer-stats")
    p.add_argument("--sizes", metavar="N1,N2,...", help="sizes for sweep-input")
    p.add_argument("--amplitude", type=float, help="input amplitude scale")
    p.add_argument("--complex-input", action="store_true", default=None,
                   help="draw complex instead of real test signals")
    p.add_argument("--impulse", action="store_true", default=None,
                   help="transform a unit impulse instead of a random block")
    p.add_argument("--out", metavar="PATH", help="output CSV path (default stdout)")
    p.add_argument("--version", action="version", version=f"qfft {__version__}")
    return p


def _overrides_from_args(args: argparse.Namespace) -> dict:
    over = {}
    if args.command is not None:
        over["command"] = args.command
    for flag, key in (("n", "n"), ("bits", "bits"), ("quantizer", "quantizer"),
                      ("trials", "trials"), ("seed", "seed"), ("samples", "samples"),
                      ("amplitude", "amplitude"), ("out", "out")):
        v = getattr(args, flag)
        if v is not None:
            over[key] = v
    if args.bit_range is not None:
        over["bit_range"] = _parse_bit_range(args.bit_range)
    if args.sizes is not None:
        try:
            over["n_sizes"] = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            raise ConfigError(f'"sizes" must be a comma list of integers, '
                              f'got {args.sizes!r}') from None
    if args.inverse:
        over["direction"] = "inverse"
    if args.quantize_twiddles:
        over["quantize_twiddles"] = True
    if args.complex_input:
        over["complex_input"] = True
    if args.impulse:
        over["impulse"] = True
    return over


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _write_csv(stream, cfg: ExperimentConfig, columns, rows,
               extra_comments=()) -> None:
    stream.write(f"# qfft {__version__}\n")
    for key, value in cfg.to_mapping().items():
        stream.write(f"# {key} = {json.dumps(value)}\n")
    for line in extra_comments:
        stream.write(f"# {line}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(v) for v in row) + "\n")


def _make_input(cfg: ExperimentConfig) -> np.ndarray:
    if cfg.impulse:
        x = np.zeros(cfg.n, dtype=np.complex128)
        x[0] = 1.0
        return x
    return uniform_signal_source(cfg.seed, cfg.complex_input, cfg.amplitude)(cfg.n)


def _run_transform(cfg: ExperimentConfig):
    m = cfg.n.bit_length() - 1
    stages = stage_plan(cfg.quantizer, cfg.bits, m, cfg.quantize_twiddles)
    pipe = build_pipeline(PipelineConfig(cfg.n, Direction(cfg.direction), stages))
    run = run_pipeline(pipe, _make_input(cfg))
    rows = [(k, float(z.real), float(z.imag)) for k, z in enumerate(run.output)]
    comments = (
        f"complex_multiplies = {run.counters.complex_multiplies}",
        f"complex_additions = {run.counters.complex_additions}",
        f"saturation_events = {run.saturation_events}",
    )
    return TRANSFORM_COLUMNS, rows, comments


def _bits_list(cfg: ExperimentConfig) -> List[int]:
    if cfg.bit_range is not None:
        lo, hi = cfg.bit_range
        return list(range(lo, hi + 1))
    return [cfg.bits]


def _run_sweep_bits(cfg: ExperimentConfig):
    m = cfg.n.bit_length() - 1
    template = PipelineConfig(
        cfg.n, Direction(cfg.direction),
        tuple(StageConfig(quantize_twiddles=cfg.quantize_twiddles) for _ in range(m)))
    source = uniform_signal_source(cfg.seed, cfg.complex_input, cfg.amplitude)
    rows = sweep_bits(_bits_list(cfg), cfg.quantizer, template, source, cfg.trials)
    table = [(r.bits, r.mean_error, r.std_error, r.var_error, r.percent_error,
              r.sqnr_db, theory_variance_for(cfg.quantizer, r.bits))
             for r in rows]
    return SWEEP_BITS_COLUMNS, table, ()


def _run_sweep_input(cfg: ExperimentConfig):
    m = cfg.n_sizes[0].bit_length() - 1
    template = PipelineConfig(
        cfg.n_sizes[0], Direction(cfg.direction),
        stage_plan(cfg.quantizer, cfg.bits, m, cfg.quantize_twiddles))
    source = uniform_signal_source(cfg.seed, cfg.complex_input, cfg.amplitude)
    rows = sweep_input(template, cfg.n_sizes, source, cfg.trials)
    table = [(r.n_size, r.stats.mean, r.stats.std_dev, r.stats.variance,
              r.percent_error) for r in rows]
    return SWEEP_INPUT_COLUMNS, table, ()


def _run_quantizer_stats(cfg: ExperimentConfig):
    if cfg.quantizer == "exact":
        raise ConfigError("quantizer-stats needs --quantizer uniform or float")
    reports = [quantizer_noise_stats(cfg.quantizer, b, cfg.samples, cfg.seed)
               for b in _bits_list(cfg)]
    table = [(r.kind, r.bits, r.n_samples, r.stats.mean, r.stats.std_dev,
              r.stats.variance, r.theory_var, r.sqnr_db) for r in reports]
    return QUANTIZER_STATS_COLUMNS, table, ()


_RUNNERS = {
    "transform": _run_transform,
    "sweep-bits": _run_sweep_bits,
    "sweep-input": _run_sweep_input,
    "quantizer-stats": _run_quantizer_stats,
}


def run_experiment(cfg: ExperimentConfig, stream=None) -> None:
    """Execute the configured experiment and write its CSV document."""
    columns, rows, comments = _RUNNERS[cfg.command](cfg)
    if stream is not None:
        _write_csv(stream, cfg, columns, rows, comments)
    elif cfg.out:
        buf = io.StringIO()
        _write_csv(buf, cfg, columns, rows, comments)
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())
    else:
        _write_csv(sys.stdout, cfg, columns, rows, comments)


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        cfg = parse_config(args.config, _overrides_from_args(args))
        if args.command is None and args.config is None:
            raise ConfigError("a command is required (transform, sweep-bits, "
                              "sweep-input or quantizer-stats)")
    except ConfigError as exc:
        print(f"qfft: error: {exc}", file=sys.stderr)
        return 1
    try:
        run_experiment(cfg)
    except ConfigError as exc:
        print(f"qfft: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError) as exc:
        print(f"qfft: numerical contract violation: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
