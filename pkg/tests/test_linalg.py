import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fefrac.linalg import (
    DimensionError,
    NotHermitianError,
    haar_unitary,
    hermitian_eig,
    is_unitary,
    kron,
    partial_transpose_first,
    polar_unitary,
    reshape_vec_mat,
    svd,
    trace_norm,
)
from fefrac.states import max_entangled, random_density, swap_operator

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 6)


def ginibre(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_hermitian(rng, n):
    a = ginibre(rng, n)
    return (a + a.conj().T) / 2


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_x_identity_block_antidiagonal():
    x = np.array([[0, 1], [1, 0]])
    out = kron(x, np.eye(2))
    expected = np.zeros((4, 4))
    expected[:2, 2:] = np.eye(2)
    expected[2:, :2] = np.eye(2)
    assert np.array_equal(out, expected)


def test_kron_matches_index_formula():
    rng = np.random.default_rng(11)
    a, b = ginibre(rng, 2), ginibre(rng, 2)
    out = kron(a, b)
    rb, cb = b.shape
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert abs(out[i * rb + k, j * cb + l] - a[i, j] * b[k, l]) <= 1e-15
    assert abs(out[0, cb + 1] - a[0, 1] * b[0, 1]) <= 1e-15


def test_eig_examples():
    w, _ = hermitian_eig(np.eye(2))
    assert np.allclose(w, [1, 1])
    w, _ = hermitian_eig([[0, 1], [1, 0]])
    assert np.allclose(w, [1, -1])


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig([[0, 1], [0, 0]])


@settings(max_examples=100, deadline=None)
@given(seeds, dims)
def test_eig_reconstruction(seed, n):
    h = random_hermitian(np.random.default_rng(seed), n)
    w, v = hermitian_eig(h)
    assert np.all(np.diff(w) <= 0)
    rec = sum(w[i] * np.outer(v[:, i], v[:, i].conj()) for i in range(n))
    assert np.max(np.abs(h - rec)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10


def test_svd_examples():
    assert np.allclose(svd(np.eye(2))[1], [1, 1])
    assert np.allclose(svd(np.diag([3.0, 0.0]))[1], [3, 0])


@settings(max_examples=100, deadline=None)
@given(seeds, dims)
def test_svd_reconstruction(seed, n):
    m = ginibre(np.random.default_rng(seed), n)
    left, s, right = svd(m)
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
    assert np.max(np.abs(m - left @ np.diag(s) @ right.conj().T)) <= 1e-10
    assert is_unitary(left) and is_unitary(right)


def test_polar_examples():
    u = haar_unitary(3, np.random.default_rng(5))
    assert np.max(np.abs(polar_unitary(u) - u)) <= 1e-10
    assert np.allclose(polar_unitary(np.diag([2.0, 3.0])), np.eye(2), atol=1e-12)


def test_polar_is_maximal():
    rng = np.random.default_rng(7)
    m = ginibre(rng, 3)
    w = polar_unitary(m)
    best = np.trace(w.conj().T @ m)
    assert abs(best.imag) <= 1e-10
    for _ in range(100):
        u = haar_unitary(3, rng)
        assert best.real >= np.trace(u.conj().T @ m).real


def test_polar_rank_deficient_flag():
    _, flag = polar_unitary(np.diag([1.0, 0.0]), with_flag=True)
    assert flag
    _, flag = polar_unitary(np.eye(2), with_flag=True)
    assert not flag


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_polar_output_unitary(seed, n):
    w = polar_unitary(ginibre(np.random.default_rng(seed), n))
    assert np.max(np.abs(w.conj().T @ w - np.eye(n))) <= 1e-10


def test_trace_norm_examples():
    assert trace_norm(np.eye(3)) == pytest.approx(3)
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2)


def test_trace_norm_pure_partial_transpose():
    # ||(|psi><psi|)^T1|| = (sum lambda)^2 with lambda read off a diagonal coefficient matrix
    lam = np.array([0.8, 0.5, np.sqrt(1 - 0.64 - 0.25)])
    psi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = lam
    rho = np.outer(psi, psi.conj())
    assert trace_norm(partial_transpose_first(rho, 3)) == pytest.approx(lam.sum() ** 2, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_trace_norm_dominates_trace(seed, n):
    m = ginibre(np.random.default_rng(seed), n)
    assert trace_norm(m) >= abs(np.trace(m)) - 1e-12


def test_partial_transpose_examples():
    assert np.array_equal(partial_transpose_first(np.eye(4), 2), np.eye(4))
    p = max_entangled(2).amplitudes
    pt = partial_transpose_first(np.outer(p, p.conj()), 2)
    assert np.allclose(pt, swap_operator(2) / 2, atol=1e-15)


def test_partial_transpose_entrywise():
    rng = np.random.default_rng(3)
    d = 3
    rho = ginibre(rng, d * d)
    out = partial_transpose_first(rho, d)
    for a in range(d):
        for k in range(d):
            for b in range(d):
                for l in range(d):
                    assert out[a * d + k, b * d + l] == rho[b * d + k, a * d + l]


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(2, 4))
def test_partial_transpose_involution_trace_hermiticity(seed, d):
    rho = random_density(d, d * d, seed).matrix
    pt = partial_transpose_first(rho, d)
    assert np.array_equal(partial_transpose_first(pt, d), rho)
    assert np.trace(pt) == pytest.approx(np.trace(rho), abs=1e-14)
    assert np.array_equal(pt, pt.conj().T)


def test_partial_transpose_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_transpose_first(np.eye(4), 3)


def test_reshape_examples():
    assert np.array_equal(reshape_vec_mat(np.eye(2)), [1, 0, 0, 1])
    assert np.array_equal(reshape_vec_mat(np.array([[0, 1], [0, 0]])), [0, 1, 0, 0])
    m = ginibre(np.random.default_rng(4), 3)
    assert np.array_equal(reshape_vec_mat(reshape_vec_mat(m), 3), m)


def test_reshape_rejects_non_square_length():
    with pytest.raises(DimensionError):
        reshape_vec_mat(np.ones(5))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        kron([[np.nan]], [[1.0]])
