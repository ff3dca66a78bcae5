"""Uniform and mantissa quantizer models, their algebra and their
closed-form noise variances."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qfft import (
    FloatQuantizerSpec,
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

finite_reals = st.floats(min_value=-1e6, max_value=1e6,
                         allow_nan=False, allow_infinity=False)


class TestUniformSpec:
    def test_derived_interval(self):
        spec = UniformQuantizerSpec(bits=8, x_max=1.0)
        assert spec.q == 2.0 * 2.0 ** -8
        assert spec.num_levels == 256
        assert abs(spec.q * spec.num_levels - 2.0 * spec.x_max) < 1e-12

    def test_rejects_bad_fields(self):
        with pytest.raises(ValueError):
            UniformQuantizerSpec(bits=0)
        with pytest.raises(ValueError):
            UniformQuantizerSpec(bits=4, x_max=-1.0)


class TestQuantizeUniform:
    def test_nearest_multiple(self):
        spec = UniformQuantizerSpec(bits=3, x_max=1.0)  # q = 0.25
        assert quantize_uniform(0.3, spec) == 0.25
        assert quantize_uniform(0.0, spec) == 0.0

    def test_saturation(self):
        spec = UniformQuantizerSpec(bits=3, x_max=1.0)
        assert quantize_uniform(5.0, spec) == 1.0
        assert uniform_saturates(5.0, spec)
        assert not uniform_saturates(0.3, spec)
        _, n_sat = quantize_uniform_array([5.0, 0.3, -7.0], spec)
        assert n_sat == 2

    def test_midpoint_rounds_away_from_zero(self):
        spec = UniformQuantizerSpec(bits=3, x_max=1.0)
        assert quantize_uniform(0.125, spec) == 0.25
        assert quantize_uniform(-0.125, spec) == -0.25

    @given(x=finite_reals)
    def test_idempotent(self, x):
        spec = UniformQuantizerSpec(bits=6, x_max=1.0)
        once = quantize_uniform(x, spec)
        assert quantize_uniform(once, spec) == once

    @given(x=finite_reals)
    def test_odd_symmetry(self, x):
        spec = UniformQuantizerSpec(bits=6, x_max=1.0)
        assert quantize_uniform(-x, spec) == -quantize_uniform(x, spec)

    def test_bounded_error_monte_carlo(self):
        spec = UniformQuantizerSpec(bits=8, x_max=1.0)
        x = np.random.default_rng(7).uniform(-1.0, 1.0, 1_000_000)
        y, n_sat = quantize_uniform_array(x, spec)
        assert n_sat == 0
        assert np.max(np.abs(x - y)) <= spec.q / 2 + 1e-15

    @pytest.mark.parametrize("bits", [4, 8, 12])
    def test_error_variance_matches_theory(self, bits):
        spec = UniformQuantizerSpec(bits=bits, x_max=1.0)
        x = np.random.default_rng(bits).uniform(-1.0, 1.0, 1_000_000)
        y, _ = quantize_uniform_array(x, spec)
        emp = float(np.var(x - y))
        theory = theoretical_variance_uniform(spec)
        assert abs(emp - theory) / theory < 0.02


class TestDecomposeFloat:
    def test_examples(self):
        d = decompose_float(1.625)
        assert (d.exponent, d.mantissa, d.sign) == (1, 0.8125, 1)
        d = decompose_float(0.5)
        assert (d.exponent, d.mantissa, d.sign) == (0, 0.5, 1)
        d = decompose_float(-3.0)
        assert (d.exponent, d.mantissa, d.sign) == (2, 0.75, -1)

    def test_zero_convention(self):
        d = decompose_float(0.0)
        assert (d.exponent, d.mantissa, d.sign) == (0, 0.0, 1)

    @given(x=st.floats(allow_nan=False, allow_infinity=False))
    def test_recompose_round_trip(self, x):
        d = decompose_float(x)
        assert d.recompose() == x or (x == 0.0 and d.recompose() == 0.0)
        if x != 0.0:
            assert 0.5 <= d.mantissa < 1.0


class TestQuantizeFloat:
    def test_example(self):
        spec = FloatQuantizerSpec(mantissa_bits=2)  # q = 0.25
        assert quantize_float(1.625, spec) == 1.5
        err = quantization_error(1.625, spec)
        assert err.relative == pytest.approx(-0.076923, abs=1e-5)
        assert err.alpha == pytest.approx(-0.0625, abs=1e-15)

    def test_half_is_exact_for_all_widths(self):
        for b in range(1, 20):
            assert quantize_float(0.5, FloatQuantizerSpec(b)) == 0.5

    def test_zero(self):
        assert quantize_float(0.0, FloatQuantizerSpec(4)) == 0.0

    @given(x=finite_reals)
    def test_idempotent(self, x):
        spec = FloatQuantizerSpec(mantissa_bits=5)
        once = quantize_float(x, spec)
        assert quantize_float(once, spec) == once

    @given(x=finite_reals)
    def test_odd_symmetry(self, x):
        spec = FloatQuantizerSpec(mantissa_bits=5)
        assert quantize_float(-x, spec) == -quantize_float(x, spec)

    @given(x=st.floats(min_value=1e-6, max_value=1e6))
    def test_relative_error_bound(self, x):
        spec = FloatQuantizerSpec(mantissa_bits=6)
        eps = (quantize_float(x, spec) - x) / x
        assert abs(eps) <= spec.q + 1e-15

    @pytest.mark.parametrize("bits", [4, 6, 8])
    def test_relative_error_variance_matches_theory(self, bits):
        spec = FloatQuantizerSpec(mantissa_bits=bits)
        m = np.random.default_rng(bits).uniform(0.5, 1.0, 1_000_000)
        qm = quantize_float_array(m, spec)
        emp = float(np.var((qm - m) / m))
        theory = theoretical_variance_float(spec)
        assert abs(emp - theory) / theory < 0.10


class TestQuantizeComplex:
    def test_componentwise(self):
        uspec = UniformQuantizerSpec(bits=3, x_max=1.0)
        assert quantize_complex(0j, uspec) == 0j
        assert quantize_complex(0.3 - 0.3j, uspec) == 0.25 - 0.25j
        fspec = FloatQuantizerSpec(mantissa_bits=2)
        assert quantize_complex(1.625 + 0.5j, fspec) == 1.5 + 0.5j


class TestTheoreticalVariances:
    def test_uniform_unit_interval(self):
        # q = 1 via bits=1, x_max=1
        spec = UniformQuantizerSpec(bits=1, x_max=1.0)
        assert spec.q == 1.0
        assert theoretical_variance_uniform(spec) == pytest.approx(1.0 / 12.0)

    def test_uniform_second_form(self):
        spec = UniformQuantizerSpec(bits=8, x_max=1.0)
        assert theoretical_variance_uniform(spec) == pytest.approx(
            (1.0 / 3.0) * 2.0 ** -16)
        assert theoretical_variance_uniform(spec) == pytest.approx(5.0863e-6, rel=1e-4)

    def test_uniform_quadratic_scaling(self):
        v1 = theoretical_variance_uniform(UniformQuantizerSpec(bits=5, x_max=1.0))
        v2 = theoretical_variance_uniform(UniformQuantizerSpec(bits=4, x_max=1.0))
        assert v2 == pytest.approx(4.0 * v1)

    def test_float_values(self):
        assert theoretical_variance_float(FloatQuantizerSpec(0)) == pytest.approx(1 / 6)
        assert theoretical_variance_float(FloatQuantizerSpec(1)) == pytest.approx(
            (1 / 6) * 0.25)

    def test_float_per_bit_scaling(self):
        for b in range(0, 10):
            v = theoretical_variance_float(FloatQuantizerSpec(b))
            v_next = theoretical_variance_float(FloatQuantizerSpec(b + 1))
            assert v_next == pytest.approx(v / 4.0)


class TestSnrDb:
    def test_values(self):
        assert snr_db(1.0, 1e-3) == pytest.approx(30.0)
        assert snr_db(2.5, 2.5) == 0.0

    def test_per_bit_gain(self):
        # One extra bit quarters the variance: 20*log10(2) dB per bit.
        for b in range(2, 12):
            lo = snr_db(1.0, theoretical_variance_uniform(UniformQuantizerSpec(b)))
            hi = snr_db(1.0, theoretical_variance_uniform(UniformQuantizerSpec(b + 1)))
            assert hi - lo == pytest.approx(20.0 * math.log10(2.0), abs=1e-9)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            snr_db(0.0, 1.0)
        with pytest.raises(ValueError):
            snr_db(1.0, 0.0)


class TestQuantizationErrorRecord:
    def test_uniform_error_fields(self):
        spec = UniformQuantizerSpec(bits=3, x_max=1.0)
        err = quantization_error(0.3, spec)
        assert err.absolute == pytest.approx(0.05)
        assert err.alpha == pytest.approx(-0.05)
        assert err.relative == pytest.approx(-0.05 / 0.3)

    def test_error_bound_grid(self):
        spec = UniformQuantizerSpec(bits=5, x_max=1.0)
        for x in np.linspace(-1, 1, 401):
            err = quantization_error(float(x), spec)
            assert abs(err.absolute) <= spec.q / 2 + 1e-15

    def test_float_alpha_bound(self):
        spec = FloatQuantizerSpec(mantissa_bits=4)
        for x in np.linspace(0.01, 4.0, 301):
            err = quantization_error(float(x), spec)
            assert abs(err.alpha) <= spec.q / 2 + 1e-15
            d = decompose_float(float(x))
            assert err.relative == pytest.approx(err.alpha / d.mantissa)
