import math

import numpy as np
import pytest

from qptk.numerics import Grid, SampledSignal, TruncationError, lp_norm
from qptk.qpft import ParameterSet
from qptk.wavelet import (
    QPWaveletAtom,
    WaveletSpec,
    format_wavelet,
    gaussian_window,
    mexican_hat,
    morlet,
    mother,
    mother_function,
    parse_wavelet,
    qp_atom,
)

GRID = Grid.symmetric(10.0, 2048)


class TestMother:
    def test_gaussian_formula_and_norm(self):
        psi = mother(gaussian_window(), GRID)
        want = math.pi ** -0.25 * np.exp(-0.5 * GRID.points ** 2)
        assert np.max(np.abs(psi.values - want)) < 1e-14
        assert abs(lp_norm(psi, 2.0) - 1.0) < 1e-10

    def test_mexican_hat_formula_and_norm(self):
        psi = mother(mexican_hat(), GRID)
        t = GRID.points
        want = 2.0 / math.sqrt(3.0) * math.pi ** -0.25 * (1 - t * t) * np.exp(-0.5 * t * t)
        assert np.max(np.abs(psi.values - want)) < 1e-14
        assert abs(lp_norm(psi, 2.0) - 1.0) < 1e-10

    def test_morlet_norm(self):
        psi = mother(morlet(5.0), GRID)
        assert abs(lp_norm(psi, 2.0) - 1.0) < 1e-10

    def test_narrow_grid_rejected(self):
        with pytest.raises(TruncationError):
            mother(gaussian_window(), Grid.symmetric(2.0, 64))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            WaveletSpec("nosuch")
        with pytest.raises(ValueError):
            WaveletSpec("morlet")  # missing frequency
        with pytest.raises(ValueError):
            WaveletSpec("gaussian", omega0=3.0)

    def test_parse_format(self):
        assert parse_wavelet("gaussian") == gaussian_window()
        assert parse_wavelet("mexican_hat") == mexican_hat()
        assert parse_wavelet("morlet:5") == morlet(5.0)
        assert format_wavelet(morlet(5.0)) == "morlet:5.0"
        assert format_wavelet(mexican_hat()) == "mexican_hat"
        with pytest.raises(ValueError):
            parse_wavelet("gaussian:3")


class TestQpAtom:
    def test_identity_parameters_give_mother(self):
        atom = QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), beta=0.0, alpha=1.0)
        got = qp_atom(gaussian_window(), atom, GRID)
        want = mother(gaussian_window(), GRID)
        assert np.max(np.abs(got.values - want.values)) == 0.0

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), beta=0.0, alpha=0.0)

    def test_norm_preservation_randomized(self):
        # the alpha**-0.5 scale and the unimodular chirp keep the L2 norm
        rng = np.random.default_rng(5)
        grid = Grid.symmetric(18.0, 4096)
        for spec in (gaussian_window(), mexican_hat()):
            base = lp_norm(mother(spec, grid), 2.0)
            for _ in range(10):
                mu = ParameterSet(rng.uniform(-1, 1), rng.uniform(0.5, 3) * rng.choice([-1, 1]),
                                  rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
                atom = QPWaveletAtom(mu, beta=rng.uniform(-1, 1), alpha=rng.uniform(0.5, 2.0))
                got = lp_norm(qp_atom(spec, atom, grid), 2.0)
                assert abs(got - base) < 1e-8

    def test_translation_moves_peak(self):
        atom = QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), beta=2.0, alpha=1.0)
        got = qp_atom(gaussian_window(), atom, GRID)
        peak_t = GRID.points[np.argmax(np.abs(got.values))]
        assert abs(peak_t - 2.0) <= GRID.step / 2 + 1e-12

    def test_magnitude_independent_of_chirp(self):
        base = qp_atom(gaussian_window(),
                       QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), 1.0, 1.5), GRID)
        chirped = qp_atom(gaussian_window(),
                          QPWaveletAtom(ParameterSet(2.0, 1, 0, -1.5, 0), 1.0, 1.5), GRID)
        assert np.max(np.abs(np.abs(chirped.values) - np.abs(base.values))) < 1e-14

    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_scale_law(self, p, alpha):
        # || alpha**-0.5 psi((. - beta)/alpha) ||_p = alpha**(1/p - 1/2) ||psi||_p
        grid = Grid.symmetric(20.0, 4096)
        spec = gaussian_window()
        base = lp_norm(mother(spec, grid), p)
        atom = QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), beta=1.0, alpha=alpha)
        got = lp_norm(qp_atom(spec, atom, grid), p)
        assert got == pytest.approx(alpha ** (1.0 / p - 0.5) * base, rel=1e-6)

    def test_l1_scaling_flag(self):
        alpha = 2.0
        atom = QPWaveletAtom(ParameterSet(0, 1, 0, 0, 0), beta=0.0, alpha=alpha)
        l1 = qp_atom(gaussian_window(), atom, GRID, scaling="l1")
        l2 = qp_atom(gaussian_window(), atom, GRID, scaling="l2")
        assert np.allclose(l1.values, l2.values / math.sqrt(alpha), rtol=1e-14)
        with pytest.raises(ValueError):
            qp_atom(gaussian_window(), atom, GRID, scaling="sup")

    def test_morlet_atom_norm(self):
        grid = Grid.symmetric(18.0, 4096)
        spec = morlet(5.0)
        base = lp_norm(mother(spec, grid), 2.0)
        atom = QPWaveletAtom(ParameterSet(1, 2, 0, 1, 0), beta=-1.0, alpha=1.5)
        assert abs(lp_norm(qp_atom(spec, atom, grid), 2.0) - base) < 1e-8
