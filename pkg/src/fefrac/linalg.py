"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` complex arrays. Composite indices of a
``d x d`` bipartite system are always row-major: ``(a, k) -> a*d + k``.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
RANK_DEFICIENT_TOL = 1e-12


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _square(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows * cols > 2**31:
        raise DimensionError(f"kron result {rows}x{cols} too large")
    return np.kron(a, b)


def hermitian_eig(h, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues nonincreasing and
    eigenvectors as columns. The input is symmetrized after the Hermiticity
    check so round-off in the caller never leaks into the spectrum.
    """
    h = symmetrize(h, tol)
    w, v = np.linalg.eigh(h)
    # eigh is ascending; reverse keeps the stable order of ties
    return w[::-1].copy(), v[:, ::-1].copy()


def symmetrize(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = _square(h)
    err = np.max(np.abs(h - h.conj().T))
    if err > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {err:.3e})")
    return (h + h.conj().T) / 2


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``m = left @ diag(singulars) @ right.conj().T`` with square unitary factors."""
    m = as_matrix(m)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    return u, s, vh.conj().T


def polar_unitary(m, with_flag: bool = False):
    """Unitary polar factor ``W V^dagger`` of ``m = W S V^dagger``.

    This is the unitary maximizing ``Re tr(U^dagger m)``. When the smallest
    singular value is below 1e-12 the maximizer is not unique; pass
    ``with_flag=True`` to also get that rank-deficiency flag.
    """
    m = _square(m)
    u, s, vh = np.linalg.svd(m)
    w = u @ vh
    if with_flag:
        return w, bool(s[-1] < RANK_DEFICIENT_TOL)
    return w


def trace_norm(m) -> float:
    m = _square(m)
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def partial_transpose_first(rho, d: int) -> np.ndarray:
    """Transpose the first tensor factor of a ``d^2 x d^2`` operator."""
    rho = _square(rho)
    if rho.shape[0] != d * d:
        raise DimensionError(f"expected a {d*d}x{d*d} matrix for d={d}, got {rho.shape}")
    # indices (a, k, b, l) -> (b, k, a, l)
    return rho.reshape(d, d, d, d).transpose(2, 1, 0, 3).reshape(d * d, d * d)


def vec(m) -> np.ndarray:
    """Row-major vectorization, ``u[a*d + k] = U[a, k]``."""
    m = _square(m)
    return m.reshape(-1).copy()


def unvec(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    d = int(round(np.sqrt(x.size)))
    if d * d != x.size or d == 0:
        raise DimensionError(f"vector length {x.size} is not a perfect square")
    return x.reshape(d, d).copy()


def reshape_vec_mat(x, d: int | None = None) -> np.ndarray:
    """Convert between a length ``d^2`` vector and a ``d x d`` matrix, either way."""
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim == 1:
        out = unvec(a)
        if d is not None and out.shape[0] != d:
            raise DimensionError(f"vector length {a.size} does not match d={d}")
        return out
    if d is not None and a.shape != (d, d):
        raise DimensionError(f"matrix shape {a.shape} does not match d={d}")
    return vec(a)


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ``d x d`` unitary (QR of a Ginibre matrix, phase-corrected)."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph
