"""Bipartite d x d states: validation, Schmidt form and the named families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, NotHermitianError, as_matrix, hermitian_eig, symmetrize

NORM_TOL = 1e-10
TRACE_TOL = 1e-9
PSD_TOL = 1e-9


class TraceError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PureState:
    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.d < 1 or amp.size != self.d * self.d:
            raise DimensionError(f"pure state for d={self.d} needs {self.d**2} amplitudes, got {amp.size}")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        norm = np.vdot(amp, amp).real
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"pure state is not normalized (norm^2 = {norm!r})")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def from_vector(cls, x, d: int | None = None) -> PureState:
        """Build a state from any nonzero vector, normalizing it."""
        x = np.asarray(x, dtype=np.complex128).reshape(-1)
        if d is None:
            d = int(round(np.sqrt(x.size)))
        n = np.linalg.norm(x)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(d, x / n)

    def coefficient_matrix(self) -> np.ndarray:
        """``A[a, k]`` = amplitude of ``|a, k>``."""
        return self.amplitudes.reshape(self.d, self.d)

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.d, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    d: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.d * self.d, self.d * self.d):
            raise DimensionError(f"density matrix for d={self.d} must be {self.d**2}x{self.d**2}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``(u1 kron u2) |psi> = sum_j coefficients[j] |jj>``, coefficients nonincreasing."""

    coefficients: np.ndarray
    u1: np.ndarray
    u2: np.ndarray


def validate_density(rho, d: int) -> DensityMatrix:
    """Check size, Hermiticity, unit trace and positivity; return the symmetrized state."""
    m = as_matrix(rho)
    if m.shape != (d * d, d * d):
        raise DimensionError(f"density matrix for d={d} must be {d*d}x{d*d}, got {m.shape[0]}x{m.shape[1]}")
    try:
        m = symmetrize(m)
    except NotHermitianError:
        i, j = np.unravel_index(np.argmax(np.abs(m - m.conj().T)), m.shape)
        raise NotHermitianError(f"density matrix is not Hermitian (worst entry at row {i}, column {j})") from None
    tr = np.trace(m).real
    if abs(tr - 1) > TRACE_TOL:
        raise TraceError(f"density matrix trace is {tr!r}, expected 1")
    w, _ = hermitian_eig(m)
    if w[-1] < -PSD_TOL:
        raise NotPositiveError(f"density matrix has negative eigenvalue {w[-1]!r}")
    return DensityMatrix(d, m)


def basis_state(d: int, a: int, k: int) -> PureState:
    x = np.zeros(d * d, dtype=np.complex128)
    x[a * d + k] = 1
    return PureState(d, x)


def max_entangled(d: int) -> PureState:
    """``|psi+> = (1/sqrt d) sum_k |kk>``."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    x = np.zeros(d * d, dtype=np.complex128)
    x[np.arange(d) * (d + 1)] = 1 / np.sqrt(d)
    return PureState(d, x)


def schmidt_decompose(psi: PureState) -> SchmidtDecomposition:
    # A = W S V^dagger  =>  (W^dagger kron V^T) psi = sum_j s_j |jj>
    w, s, vh = np.linalg.svd(psi.coefficient_matrix())
    return SchmidtDecomposition(s, w.conj().T, vh.conj())


def swap_operator(d: int) -> np.ndarray:
    """``V = sum_ij |ij><ji|``."""
    v = np.zeros((d * d, d * d), dtype=np.complex128)
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    v[(i * d + j).ravel(), (j * d + i).ravel()] = 1
    return v


def isotropic(d: int, f: float) -> DensityMatrix:
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if not 0 <= f <= 1:
        raise ValueError(f"isotropic fidelity must lie in [0, 1], got {f!r}")
    p = max_entangled(d).amplitudes
    n = d * d
    rho = (1 - f) / (n - 1) * np.eye(n) + (n * f - 1) / (n - 1) * np.outer(p, p.conj())
    return validate_density(rho, d)


def werner(d: int, f: float) -> DensityMatrix:
    """Werner state ``(d-f)/(d^3-d) I + (df-1)/(d^3-d) V``.

    The parameter is the swap expectation, ``f = tr(rho V)``; it is positive
    semidefinite for every ``f`` in ``[-1, 1]``.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if not -1 <= f <= 1:
        raise ValueError(f"Werner parameter must lie in [-1, 1], got {f!r}")
    c = d**3 - d
    rho = (d - f) / c * np.eye(d * d) + (d * f - 1) / c * swap_operator(d)
    return validate_density(rho, d)


def permutation_mixture(d: int, sigma, p) -> DensityMatrix:
    """``sum_i p_i |i, sigma(i)><i, sigma(i)|`` with zero-based ``sigma``."""
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(d)):
        raise ValueError(f"{sigma} is not a permutation of 0..{d-1}")
    p = np.asarray(p, dtype=float)
    if p.shape != (d,) or np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
        raise ValueError("p must be a length-d probability vector")
    diag = np.zeros(d * d)
    for i, s in enumerate(sigma):
        diag[i * d + s] = p[i]
    return validate_density(np.diag(diag), d)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_pure(d: int, seed) -> PureState:
    """Haar-random pure state; ``seed`` is an int or a caller-owned Generator."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    rng = _rng(seed)
    x = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
    return PureState(d, x / np.linalg.norm(x))


def random_density(d: int, rank: int, seed) -> DensityMatrix:
    if not 1 <= rank <= d * d:
        raise ValueError(f"rank must lie in [1, {d*d}], got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((d * d, rank)) + 1j * rng.standard_normal((d * d, rank))
    rho = g @ g.conj().T
    return validate_density(rho / np.trace(rho).real, d)


def mixture(weights, pures) -> DensityMatrix:
    """``sum_t p_t |psi_t><psi_t|`` for pure states of a common dimension."""
    weights = np.asarray(weights, dtype=float)
    pures = list(pures)
    if not pures or len(weights) != len(pures):
        raise ValueError("need one weight per pure state")
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("weights must be a probability vector")
    d = pures[0].d
    if any(psi.d != d for psi in pures):
        raise DimensionError("all pure states must share the same local dimension")
    rho = sum(w * np.outer(psi.amplitudes, psi.amplitudes.conj()) for w, psi in zip(weights, pures))
    return validate_density(rho, d)
