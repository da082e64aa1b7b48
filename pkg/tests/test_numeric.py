import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fefrac import exact
from fefrac.linalg import haar_unitary, is_unitary, polar_unitary
from fefrac.numeric import (
    OptimizerConfig,
    deterministic_starts,
    fef_euclidean_gradient,
    fef_maximize,
    fef_objective,
    fef_oracle_grid_d2,
    polar_ascent,
    su2_grid,
)
from fefrac.states import isotropic, max_entangled, permutation_mixture, random_density, werner

seeds = st.integers(0, 2**32 - 1)


def objective_by_expansion(rho, u):
    # <psi+| (U^dagger kron I) rho (U kron I) |psi+>, no vectorization shortcut
    d = u.shape[0]
    p = max_entangled(d).amplitudes
    k = np.kron(u, np.eye(d))
    return np.vdot(p, k.conj().T @ rho @ k @ p).real


def test_objective_examples():
    for d, f in [(2, 0.5), (3, 0.7), (4, 1 / 16)]:
        assert fef_objective(isotropic(d, f), np.eye(d)) == pytest.approx(f, abs=1e-14)
    assert fef_objective(max_entangled(3).density(), np.eye(3)) == pytest.approx(1)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(2, 4))
def test_objective_two_paths_agree(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(d, int(rng.integers(1, d * d + 1)), rng)
    u = haar_unitary(d, rng)
    assert abs(fef_objective(rho, u) - objective_by_expansion(rho.matrix, u)) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds, st.floats(0, 2 * np.pi))
def test_objective_global_phase_invariant(seed, theta):
    rng = np.random.default_rng(seed)
    rho = random_density(3, 4, rng)
    u = haar_unitary(3, rng)
    assert fef_objective(rho, u) == pytest.approx(fef_objective(rho, np.exp(1j * theta) * u), abs=1e-14)


def test_objective_rejects_non_unitary():
    with pytest.raises(ValueError):
        fef_objective(isotropic(2, 0.5), 2 * np.eye(2))


def test_gradient_maximally_mixed_parallel_to_u():
    u = haar_unitary(3, np.random.default_rng(1))
    g = fef_euclidean_gradient(np.eye(9) / 9, u)
    assert np.allclose(g, u / 27, atol=1e-15)


def test_gradient_max_entangled_at_identity():
    # P+ vec(I) = vec(I) since vec(I) = sqrt(d) psi+, hence G = I/d
    for d in (2, 3):
        g = fef_euclidean_gradient(max_entangled(d).density(), np.eye(d))
        assert np.allclose(g, np.eye(d) / d, atol=1e-15)


def test_gradient_finite_differences():
    rng = np.random.default_rng(99)
    eps = 1e-5
    for _ in range(20):
        d = int(rng.integers(2, 5))
        rho = random_density(d, int(rng.integers(1, d * d + 1)), rng).matrix
        u = haar_unitary(d, rng)
        delta = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))

        def f(x):
            v = x.reshape(-1)
            return np.vdot(v, rho @ v).real / d

        fd = (f(u + eps * delta) - f(u - eps * delta)) / (2 * eps)
        g = fef_euclidean_gradient(rho, u)
        analytic = 2 * np.vdot(delta.reshape(-1), g.reshape(-1)).real
        assert abs(fd - analytic) <= 1e-6 * max(1.0, abs(analytic))


def test_deterministic_starts():
    s2 = deterministic_starts(2)
    assert any(np.allclose(s, np.eye(2)) for s in s2)
    assert any(np.allclose(s, [[0, 1], [1, 0]]) for s in s2)
    assert any(np.allclose(s, np.diag([1, -1])) for s in s2)
    assert any(np.allclose(s, [[0, 1], [-1, 0]]) for s in s2)
    shift = deterministic_starts(3)[1]
    assert abs(np.trace(shift)) == 0
    for d in range(2, 7):
        for s in deterministic_starts(d):
            assert np.max(np.abs(s.conj().T @ s - np.eye(d))) <= 1e-14


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 4))
def test_polar_ascent_is_monotone(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(d, int(rng.integers(1, d * d + 1)), rng)
    run = polar_ascent(rho, haar_unitary(d, rng), record=True)
    steps = np.diff(run.history)
    assert np.all(steps >= -1e-14)


def test_polar_ascent_unshifted_form_is_monotone_too():
    # the plain iteration W <- unvec(rho vec U) on rho itself also ascends
    rng = np.random.default_rng(4)
    rho = random_density(3, 5, rng).matrix
    u = haar_unitary(3, rng)
    vals = []
    for _ in range(200):
        vals.append(np.vdot(u.reshape(-1), rho @ u.reshape(-1)).real / 3)
        u = polar_unitary((rho @ u.reshape(-1)).reshape(3, 3))
    assert np.all(np.diff(vals) >= -1e-14)


def test_maximize_examples():
    assert fef_maximize(isotropic(3, 0.6)).value == pytest.approx(0.6, abs=1e-6)
    assert fef_maximize(werner(4, -1)).value == pytest.approx(1 / 6, abs=1e-6)
    sigma = np.random.default_rng(3).permutation(3)
    assert fef_maximize(permutation_mixture(3, sigma, [1 / 3] * 3)).value == pytest.approx(1 / 3, abs=1e-6)


def test_maximize_werner_singlet_cross_check():
    assert fef_maximize(werner(2, -1)).value == pytest.approx(exact.fef_werner(2, -1), abs=1e-9)


@pytest.mark.parametrize("d", [3, 5])
def test_werner_odd_optimum_has_trace_uustar(d):
    res = fef_maximize(werner(d, -0.5))
    u = res.optimal_unitary
    assert np.trace(u @ u.conj()).real == pytest.approx(-(d - 2), abs=1e-5)
    assert res.value == pytest.approx(exact.fef_werner(d, -0.5), abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(2, 4))
def test_result_invariants(seed, d):
    rho = random_density(d, 1 + seed % (d * d), seed)
    res = fef_maximize(rho, OptimizerConfig(restarts=6))
    assert res.value == pytest.approx(fef_objective(rho, res.optimal_unitary), abs=1e-12)
    assert res.value <= res.spectral_bound + 1e-9
    assert 1 / d**2 - 1e-9 <= res.value <= 1 + 1e-9
    assert is_unitary(res.optimal_unitary)
    assert res.converged


def test_maximize_is_deterministic():
    rho = random_density(3, 3, 17)
    a = fef_maximize(rho, OptimizerConfig(seed=5))
    b = fef_maximize(rho, OptimizerConfig(seed=5))
    assert a.value == b.value
    assert np.array_equal(a.optimal_unitary, b.optimal_unitary)


def test_degenerate_step_triggers_counted_restart():
    # rho - lambda_min I vanishes on vec(I) for the singlet, so the identity seed restarts
    res = fef_maximize(werner(2, -1), OptimizerConfig(restarts=1))
    assert res.restarts_used == 2
    assert res.value == pytest.approx(1, abs=1e-9)


def test_maximally_mixed_every_unitary_optimal():
    res = fef_maximize(np.eye(16) / 16)
    assert res.value == pytest.approx(1 / 16, abs=1e-15)


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(tol=1.0)


def test_grid_oracle_examples():
    assert fef_oracle_grid_d2(isotropic(2, 0.9), 60) == pytest.approx(0.9, abs=1e-6)
    assert fef_oracle_grid_d2(np.eye(4) / 4, 60) == pytest.approx(0.25, abs=1e-9)
    with pytest.raises(ValueError):
        fef_oracle_grid_d2(np.eye(9) / 9)


def test_grid_oracle_unpolished_is_close():
    # coarse grid alone is already within grid spacing of the optimum
    rng = np.random.default_rng(21)
    rho = random_density(2, 2, rng).matrix
    u = su2_grid(40)
    coarse = (np.einsum("ni,ij,nj->n", u.conj(), rho, u).real / 2).max()
    assert coarse <= fef_maximize(rho).value + 1e-12
    assert fef_maximize(rho).value - coarse <= 5e-3
