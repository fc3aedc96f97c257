import math
import time

import numpy as np
import pytest

from qptk.numerics import Grid, GridMismatchError, SampledSignal, inner_product, lp_norm
from qptk.qpft import ParameterSet, classical_wpt, plain_fourier
from qptk.qpwpt import (
    ChirpSamplingError,
    ReconstructionWarning,
    TFGrid,
    TFMap,
    TruncationWarning,
    check_boundedness,
    check_lp_beta_bound,
    check_reproducing_identity,
    energy,
    moyal,
    qpwpt_direct,
    qpwpt_fast,
    qpwpt_via_spectral,
    reconstruct,
    reproducing_kernel,
)
from qptk.signals_io import gaussian, generate, hermite
from qptk.wavelet import gaussian_window, mexican_hat, morlet, mother_function

import oracles


def rel_frob(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


@pytest.fixture
def f512():
    return generate(gaussian(1.0), Grid.symmetric(8.0, 512))


TF_88 = TFGrid(Grid.symmetric(8.0, 128), Grid.symmetric(8.0, 128), 1.0)


class TestDirect:
    def test_zero_signal(self, f512):
        z = f512.map(np.zeros_like(f512.values))
        W = qpwpt_direct(z, gaussian_window(), TF_88, ParameterSet(1, 2, 1, 1, 1))
        assert np.all(W.values == 0)

    def test_boundedness(self, f512):
        for mu in (ParameterSet(1, 2, 1, 1, 1), ParameterSet(0.5, -1.5, 0.3, -0.2, 0.7)):
            W = qpwpt_direct(f512, gaussian_window(), TF_88, mu)
            rep = check_boundedness(W, f512, gaussian_window())
            assert rep.passed

    @pytest.mark.parametrize("alpha", [1.0, 1.5])
    def test_matches_classical_wpt_oracle(self, f512, alpha):
        # at mu = (0, -1, 1, 0, 0) the map is the classical wave packet
        # transform times the constant phase e^{i pi/4} e^{i xi^2}
        tf = TFGrid(Grid.symmetric(4.0, 48), Grid.symmetric(6.0, 32), alpha)
        W = qpwpt_direct(f512, gaussian_window(), tf, classical_wpt())
        oracle = oracles.classical_wpt(
            f512.values, f512.grid.points, tf.xi_grid.points, tf.beta_grid.points,
            alpha, mother_function(gaussian_window()),
        )
        xi = tf.xi_grid.points
        want = np.exp(1j * math.pi / 4) * np.exp(1j * xi * xi)[:, None] * oracle
        assert rel_frob(W.values, want) < 1e-8

    def test_chirp_precondition(self):
        f = generate(gaussian(1.0), Grid.symmetric(8.0, 64))
        with pytest.raises(ChirpSamplingError):
            qpwpt_direct(f, gaussian_window(), TF_88, ParameterSet(10, 1, 0, 0, 0))

    def test_map_shape_and_immutability(self, f512):
        W = qpwpt_direct(f512, gaussian_window(), TF_88, plain_fourier())
        assert W.values.shape == (128, 128)
        with pytest.raises(ValueError):
            W.values[0, 0] = 1.0
        with pytest.raises(GridMismatchError):
            TFMap(TF_88, plain_fourier(), np.zeros((2, 2), dtype=complex))


class TestFast:
    @pytest.mark.parametrize("mu", [
        ParameterSet(1, 1, 0, 0, 0),
        ParameterSet(0.5, -1.5, 0.3, -0.2, 0.7),
        ParameterSet(0, 1, 0, 0, 0),
    ])
    def test_matches_direct(self, f512, mu):
        W_fast = qpwpt_fast(f512, gaussian_window(), Grid.symmetric(8.0, 64), 1.0, mu)
        W_dir = qpwpt_direct(f512, gaussian_window(), W_fast.tf, mu)
        assert rel_frob(W_fast.values, W_dir.values) < 1e-8

    @pytest.mark.parametrize("spec", [mexican_hat(), morlet(5.0)])
    def test_matches_direct_other_wavelets(self, f512, spec):
        mu = ParameterSet(0.8, 1.7, -0.4, 0.6, 0.2)
        W_fast = qpwpt_fast(f512, spec, Grid.symmetric(6.0, 48), 1.5, mu)
        W_dir = qpwpt_direct(f512, spec, W_fast.tf, mu)
        assert rel_frob(W_fast.values, W_dir.values) < 1e-8

    def test_zero(self, f512):
        z = f512.map(np.zeros_like(f512.values))
        W = qpwpt_fast(z, gaussian_window(), Grid.symmetric(8.0, 32), 1.0, plain_fourier())
        assert np.all(W.values == 0)

    def test_speedup(self):
        f = generate(gaussian(1.0), Grid.symmetric(8.0, 1024))
        beta = Grid.symmetric(8.0, 128)
        mu = ParameterSet(1, 1, 0, 0, 0)
        spec = gaussian_window()
        tf = qpwpt_fast(f, spec, beta, 1.0, mu).tf  # warms up the fast path
        qpwpt_direct(f, spec, tf, mu)  # warms up BLAS

        def best_of(fn, runs=3):
            times = []
            for _ in range(runs):
                t0 = time.perf_counter()
                fn()
                times.append(time.perf_counter() - t0)
            return min(times)

        t_fast = best_of(lambda: qpwpt_fast(f, spec, beta, 1.0, mu))
        t_dir = best_of(lambda: qpwpt_direct(f, spec, tf, mu))
        assert t_dir / t_fast >= 10.0


class TestSpectral:
    @pytest.mark.parametrize("point,alpha", [
        ((0.0, 0.0), 1.0),
        ((1.0, -1.0), 2.0),
        ((0.5, 0.5), 1.0),
    ])
    def test_matches_direct(self, f512, point, alpha):
        mu = ParameterSet(1, 2, 1, 0, 0)
        tf = TFGrid(Grid.symmetric(8.0, 129), Grid.symmetric(8.0, 129), alpha)
        W = qpwpt_direct(f512, gaussian_window(), tf, mu)
        xi_v, beta_v = point
        k = int(round((xi_v - tf.xi_grid.start) / tf.xi_grid.step))
        j = int(round((beta_v - tf.beta_grid.start) / tf.beta_grid.step))
        direct = complex(W.values[k, j])
        got = qpwpt_via_spectral(
            f512, gaussian_window(), tf.xi_grid.point(k), tf.beta_grid.point(j),
            alpha, mu, Grid.symmetric(16.0, 1601),
        )
        assert abs(got - direct) / abs(direct) < 1e-4

    def test_zero(self, f512):
        z = f512.map(np.zeros_like(f512.values))
        got = qpwpt_via_spectral(
            z, gaussian_window(), 0.0, 0.0, 1.0, ParameterSet(1, 2, 1, 0, 0),
            Grid.symmetric(16.0, 801),
        )
        assert got == 0

    def test_truncation_warning(self, f512):
        with pytest.warns(TruncationWarning):
            qpwpt_via_spectral(
                f512, gaussian_window(), 0.0, 0.0, 1.0, ParameterSet(1, 2, 1, 0, 0),
                Grid.symmetric(3.0, 301),
            )


class TestReconstruct:
    @pytest.mark.parametrize("recipe", [gaussian(1.0), hermite(1)])
    def test_round_trip(self, recipe):
        grid = Grid.symmetric(8.0, 512)
        f = generate(recipe, grid)
        W = qpwpt_direct(f, gaussian_window(), TF_88, plain_fourier())
        rec = reconstruct(W, gaussian_window(), grid)
        assert rel_frob(rec.values, f.values) < 1e-2

    def test_zero_map(self):
        W = TFMap(TF_88, plain_fourier(), np.zeros((128, 128), dtype=complex))
        rec = reconstruct(W, gaussian_window(), Grid.symmetric(8.0, 256))
        assert np.all(rec.values == 0)

    def test_under_resolved_warns(self, f512):
        tf = TFGrid(Grid.symmetric(1.5, 12), Grid.symmetric(1.5, 12), 1.0)
        W = qpwpt_direct(f512, gaussian_window(), tf, plain_fourier())
        with pytest.warns(ReconstructionWarning):
            reconstruct(W, gaussian_window(), f512.grid)


class TestMoyalEnergy:
    def test_moyal_unit(self, f512):
        W = qpwpt_direct(f512, gaussian_window(), TF_88, ParameterSet(1, 2, 1, 1, 1))
        assert abs(moyal(W, W) - 1.0) < 1e-3

    def test_moyal_orthogonal_pair(self):
        grid = Grid.symmetric(8.0, 512)
        h0 = generate(hermite(0), grid)
        h1 = generate(hermite(1), grid)
        mu = ParameterSet(1, 2, 1, 1, 1)
        W0 = qpwpt_direct(h0, gaussian_window(), TF_88, mu)
        W1 = qpwpt_direct(h1, gaussian_window(), TF_88, mu)
        assert abs(moyal(W0, W1)) < 1e-3

    def test_moyal_matches_inner_product(self, f512):
        grid = f512.grid
        h1 = generate(hermite(1), grid)
        mix = SampledSignal(grid, 0.8 * f512.values + 0.6 * h1.values)
        mu = ParameterSet(1, 2, 1, 1, 1)
        Wf = qpwpt_direct(f512, gaussian_window(), TF_88, mu)
        Wg = qpwpt_direct(mix, gaussian_window(), TF_88, mu)
        want = inner_product(f512, mix)  # conj(<psi,psi>) = 1
        got = moyal(Wf, Wg)
        assert abs(got - want) / abs(want) < 1e-3

    def test_self_moyal_is_energy(self, f512):
        W = qpwpt_direct(f512, gaussian_window(), TF_88, plain_fourier())
        got = moyal(W, W)
        assert got.imag == pytest.approx(0.0, abs=1e-12)
        assert got.real == pytest.approx(energy(W), rel=1e-12)

    def test_mismatch_rejected(self, f512):
        W = qpwpt_direct(f512, gaussian_window(), TF_88, plain_fourier())
        other_tf = TFGrid(Grid.symmetric(8.0, 64), Grid.symmetric(8.0, 128), 1.0)
        W2 = qpwpt_direct(f512, gaussian_window(), other_tf, plain_fourier())
        with pytest.raises(GridMismatchError):
            moyal(W, W2)

    def test_energy_conservation_and_scaling(self, f512):
        mu = ParameterSet(1, 2, 1, 1, 1)
        W = qpwpt_direct(f512, gaussian_window(), TF_88, mu)
        assert abs(energy(W) - 1.0) < 1e-3
        scaled = f512.map(2.0 * f512.values)
        W2 = qpwpt_direct(scaled, gaussian_window(), TF_88, mu)
        assert energy(W2) == pytest.approx(4.0 * energy(W), rel=1e-3)

    def test_energy_zero(self):
        W = TFMap(TF_88, plain_fourier(), np.zeros((128, 128), dtype=complex))
        assert energy(W) == 0.0


class TestReproducingKernel:
    GRID = Grid.symmetric(12.0, 1024)

    def test_diagonal_is_atom_norm(self):
        mu = ParameterSet(1, 2, 1, 1, 1)
        val = reproducing_kernel(
            gaussian_window(), mu, (0.5, -0.3, 1.0), (0.5, -0.3, 1.0), self.GRID
        )
        assert abs(val) == pytest.approx(abs(mu.b) / (2 * math.pi), abs=1e-6)

    def test_separated_atoms_vanish(self):
        mu = ParameterSet(1, 2, 1, 1, 1)
        val = reproducing_kernel(
            gaussian_window(), mu, (0.0, -5.0, 0.5), (0.0, 5.0, 0.5), self.GRID
        )
        assert abs(val) < 1e-8

    def test_scale_mismatch_rejected(self):
        with pytest.raises(ValueError):
            reproducing_kernel(
                gaussian_window(), plain_fourier(), (0, 0, 1.0), (0, 0, 2.0), self.GRID
            )

    def test_reproducing_identity(self, f512):
        W = qpwpt_direct(f512, gaussian_window(), TF_88, ParameterSet(1, 2, 1, 1, 1))
        reports = check_reproducing_identity(W, gaussian_window(), f512.grid)
        assert len(reports) == 5
        for rep in reports:
            assert rep.passed, rep.label
            assert rep.relative_deviation <= 1e-2


class TestLpBetaBound:
    @pytest.mark.parametrize("p", [2.0, 4.0])
    def test_gaussian(self, f512, p):
        for mu in (ParameterSet(1, 2, 1, 1, 1), ParameterSet(0.3, -0.8, 0.2, 0.5, -0.6)):
            W = qpwpt_direct(f512, gaussian_window(), TF_88, mu)
            rep = check_lp_beta_bound(W, f512, gaussian_window(), p)
            assert rep.passed, rep.label
