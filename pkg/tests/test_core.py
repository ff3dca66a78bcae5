"""Transform mathematics: twiddles, bit reversal, butterfly, the
definitional DFT/IDFT oracle and the radix-p decomposition."""

import math

import numpy as np
import pytest

from qfft import (
    OpCounters,
    as_signal_block,
    bit_reverse_indices,
    build_twiddle_table,
    butterfly_dit,
    dft_direct,
    idft_direct,
    radix_p_decompose,
    twiddle_factor,
)

from conftest import random_block


def dft_fsum(x):
    """Independent per-element summation of the definitional transform
    using exactly rounded (fsum) accumulation."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        re_terms = []
        im_terms = []
        for j in range(n):
            theta = 2.0 * math.pi * ((k * j) % n) / n
            c, s = math.cos(theta), math.sin(theta)
            a, b = x[j].real, x[j].imag
            # x[j] * (cos - i sin)
            re_terms.extend((a * c, b * s))
            im_terms.extend((b * c, -a * s))
        out[k] = complex(math.fsum(re_terms), math.fsum(im_terms))
    return out


class TestTwiddleFactor:
    def test_known_values(self):
        assert twiddle_factor(8, 0) == 1.0 + 0.0j
        w = twiddle_factor(4, 1)
        assert w.real == pytest.approx(0.0, abs=1e-15)
        assert w.imag == pytest.approx(-1.0, abs=1e-15)
        w = twiddle_factor(8, 1)
        assert w.real == pytest.approx(0.70710678118654752, abs=1e-12)
        assert w.imag == pytest.approx(-0.70710678118654752, abs=1e-12)

    def test_unit_magnitude(self):
        for n in (2, 16, 1024):
            for k in range(0, n, max(1, n // 16)):
                assert abs(abs(twiddle_factor(n, k)) - 1.0) < 1e-12

    def test_group_property(self, rng):
        # W_N^j * W_N^k == W_N^{(j+k) mod N}
        for n in (16, 256):
            for _ in range(50):
                j, k = rng.integers(0, n, 2)
                lhs = twiddle_factor(n, int(j)) * twiddle_factor(n, int(k))
                rhs = twiddle_factor(n, int((j + k) % n))
                assert abs(lhs - rhs) < 1e-12

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            twiddle_factor(12, 0)
        with pytest.raises(ValueError):
            twiddle_factor(8, 8)
        with pytest.raises(ValueError):
            twiddle_factor(8, -1)


class TestTwiddleTable:
    def test_basic(self):
        t = build_twiddle_table(8)
        assert t.factors.shape == (4,)
        assert t.factors[0] == 1.0 + 0.0j
        assert not t.conjugated

    def test_conjugated(self):
        fwd = build_twiddle_table(16).factors
        inv = build_twiddle_table(16, conjugated=True).factors
        assert np.allclose(inv, np.conj(fwd), atol=0, rtol=0)


class TestBitReverse:
    def test_known_permutations(self):
        assert bit_reverse_indices(2).tolist() == [0, 1]
        assert bit_reverse_indices(4).tolist() == [0, 2, 1, 3]
        assert bit_reverse_indices(8).tolist() == [0, 4, 2, 6, 1, 5, 3, 7]

    @pytest.mark.parametrize("n", [2 ** k for k in range(1, 13)])
    def test_involution(self, n):
        rev = bit_reverse_indices(n)
        assert np.array_equal(rev[rev], np.arange(n))
        assert sorted(rev.tolist()) == list(range(n))

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            bit_reverse_indices(12)


class TestButterfly:
    def test_identity_twiddle(self):
        assert butterfly_dit(1 + 0j, 1 + 0j, 1 + 0j) == (2 + 0j, 0 + 0j)

    def test_minus_j_twiddle(self):
        up, lo = butterfly_dit(1 + 0j, 1 + 0j, -1j)
        assert up == 1 - 1j
        assert lo == 1 + 1j

    def test_zero_upper_input(self, rng):
        b = complex(*rng.uniform(-1, 1, 2))
        w = twiddle_factor(16, 3)
        up, lo = butterfly_dit(0j, b, w)
        assert up == w * b
        assert lo == -(w * b)

    def test_counter_tally(self):
        counters = OpCounters()
        butterfly_dit(1 + 1j, 2 - 1j, twiddle_factor(8, 1), counters)
        assert counters.complex_multiplies == 1
        assert counters.complex_additions == 2

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            butterfly_dit(complex("nan"), 0j, 1 + 0j)


class TestDftDirect:
    def test_constant_input(self):
        X = dft_direct([1, 1, 1, 1])
        assert np.allclose(X, [4, 0, 0, 0], atol=1e-12)

    def test_impulse(self):
        x = np.zeros(8)
        x[0] = 1.0
        assert np.allclose(dft_direct(x), np.ones(8), atol=1e-12)

    def test_against_fsum_summation(self, rng):
        # Independent exactly-rounded per-element summation.
        for n in (8, 16, 64):
            x = random_block(rng, n)
            assert np.max(np.abs(dft_direct(x) - dft_fsum(x))) < 1e-12

    def test_against_numpy_fft(self, rng):
        x = random_block(rng, 128)
        assert np.max(np.abs(dft_direct(x) - np.fft.fft(x))) < 1e-9

    def test_rejects_invalid_length(self):
        with pytest.raises(ValueError):
            dft_direct(np.ones(12))
        with pytest.raises(ValueError):
            dft_direct(np.ones(1))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            dft_direct([1.0, float("inf"), 0.0, 0.0])

    def test_linearity(self, rng):
        for n in (8, 64):
            x = random_block(rng, n)
            y = random_block(rng, n)
            a, b = rng.uniform(-2, 2, 2)
            lhs = dft_direct(a * x + b * y)
            rhs = a * dft_direct(x) + b * dft_direct(y)
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    @pytest.mark.parametrize("n", [8, 64, 1024])
    def test_parseval(self, rng, n):
        x = random_block(rng, n)
        X = dft_direct(x)
        time_energy = np.sum(np.abs(x) ** 2)
        freq_energy = np.sum(np.abs(X) ** 2) / n
        assert abs(time_energy - freq_energy) / time_energy < 1e-9


class TestIdftDirect:
    def test_constant_spectrum_inverse(self):
        x = idft_direct([4, 0, 0, 0])
        assert np.allclose(x, [1, 1, 1, 1], atol=1e-12)

    def test_all_ones_gives_impulse(self):
        x = idft_direct(np.ones(8))
        expected = np.zeros(8)
        expected[0] = 1.0
        assert np.allclose(x, expected, atol=1e-12)

    def test_round_trip(self, rng):
        x = random_block(rng, 64)
        assert np.max(np.abs(idft_direct(dft_direct(x)) - x)) < 1e-9


class TestRadixDecompose:
    def test_impulse_radix2(self):
        x = np.zeros(8)
        x[0] = 1.0
        assert np.allclose(radix_p_decompose(x, 2), np.ones(8), atol=1e-12)

    def test_radix4_matches_oracle(self, rng):
        x = random_block(rng, 16)
        assert np.max(np.abs(radix_p_decompose(x, 4) - dft_direct(x))) < 1e-9

    def test_cross_radix_agreement(self, rng):
        x = random_block(rng, 16)
        r2 = radix_p_decompose(x, 2)
        r4 = radix_p_decompose(x, 4)
        oracle = dft_direct(x)
        assert np.max(np.abs(r2 - r4)) < 1e-9
        assert np.max(np.abs(r2 - oracle)) < 1e-9

    @pytest.mark.parametrize("n", [4, 8, 16, 32])
    @pytest.mark.parametrize("p", [2, 4])
    def test_agrees_with_oracle(self, rng, n, p):
        for _ in range(20):
            x = random_block(rng, n)
            assert np.max(np.abs(radix_p_decompose(x, p) - dft_direct(x))) < 1e-9

    def test_rejects_bad_radix(self):
        with pytest.raises(ValueError):
            radix_p_decompose(np.ones(8), 3)
        with pytest.raises(ValueError):
            radix_p_decompose(np.ones(2), 4)


class TestSignalBlockValidation:
    def test_accepts_lists(self):
        arr = as_signal_block([1, 2, 3, 4])
        assert arr.dtype == np.complex128

    def test_rejects_2d(self):
        with pytest.raises(ValueError):
            as_signal_block(np.ones((2, 2)))

    def test_rejects_oversize(self):
        with pytest.raises(ValueError):
            as_signal_block(np.ones(2 ** 21))
