"""Numerical FEF: maximize the overlap with (U kron I)|psi+> over unitaries U.

With ``u = vec(U)`` (row-major) one has ``(U kron I)|psi+> = u / sqrt(d)``, so
the objective is the quadratic form ``u^dagger rho u / d`` restricted to
vectorized unitaries. It is maximized by a polar fixed-point iteration:
``U <- polar(unvec(rho u))``. For positive semidefinite ``rho`` every step is
non-decreasing, and the iteration has no step size to tune.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .linalg import haar_unitary, hermitian_eig, is_unitary, polar_unitary
from .states import DensityMatrix

log = logging.getLogger(__name__)

DEGENERATE_STEP_TOL = 1e-14
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    max_iterations: int = 10000
    tol: float = 1e-12
    restarts: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("max_iterations and restarts must be positive")
        if not 0 < self.tol < 1:
            raise ValueError(f"tol must lie in (0, 1), got {self.tol!r}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True, eq=False)
class FefResult:
    value: float
    optimal_unitary: np.ndarray
    iterations_total: int
    restarts_used: int
    converged: bool
    spectral_bound: float
    restart_values: list[float] = field(default_factory=list)


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)


def fef_objective(rho: DensityMatrix, u) -> float:
    """``<psi+|(U^dagger kron I) rho (U kron I)|psi+>`` as ``vec(U)^dagger rho vec(U) / d``."""
    u = np.asarray(u, dtype=np.complex128)
    if not is_unitary(u, tol=1e-8):
        raise ValueError("U is not unitary within 1e-8")
    m = _matrix(rho)
    d = u.shape[0]
    if m.shape != (d * d, d * d):
        raise ValueError(f"U is {d}x{d} but rho is {m.shape[0]}x{m.shape[1]}")
    x = u.reshape(-1)
    return float(np.vdot(x, m @ x).real / d)


def fef_euclidean_gradient(rho: DensityMatrix, u) -> np.ndarray:
    """``G = unvec(rho vec(U)) / d``; the derivative along ``D`` is ``2 Re <vec D, vec G>``."""
    u = np.asarray(u, dtype=np.complex128)
    d = u.shape[0]
    return (_matrix(rho) @ u.reshape(-1)).reshape(d, d) / d


def deterministic_starts(d: int) -> list[np.ndarray]:
    """Seed unitaries: identity, cyclic shift, roots-of-unity diagonal, and ``A kron I`` for even d.

    ``A = [[0, 1], [-1, 0]]``. The identity is optimal when the weight on
    ``|psi+>`` dominates; the two traceless unitaries minimize ``|tr U|``; the
    antisymmetric block minimizes ``tr(U U*)`` for even ``d``.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    shift = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    roots = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    starts = [np.eye(d, dtype=np.complex128), shift, roots]
    if d % 2 == 0:
        a = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
        starts.append(np.kron(a, np.eye(d // 2)))
    return starts


@dataclass
class Ascent:
    unitary: np.ndarray
    value: float
    iterations: int
    converged: bool
    degenerate_restarts: int
    history: list[float]


def polar_ascent(rho, u0, max_iterations: int = 10000, tol: float = 1e-12,
                 rng: np.random.Generator | None = None, record: bool = False) -> Ascent:
    """Run the polar fixed-point iteration from ``u0`` until the gain drops below ``tol``.

    The iteration uses ``rho - lambda_min I``: on vectorized unitaries this only
    shifts the objective by a constant, keeps the form positive semidefinite
    (so ascent stays monotone) and removes the damping the smallest eigenvalue
    would otherwise add to each step.
    """
    m = _matrix(rho)
    d = int(round(np.sqrt(m.shape[0])))
    spectrum = np.linalg.eigvalsh(m)
    lam_min = spectrum[0]
    shifted = m - lam_min * np.eye(d * d)
    rng = rng if rng is not None else np.random.default_rng(0)

    def value(x):
        return np.vdot(x, m @ x).real / d

    u = np.asarray(u0, dtype=np.complex128).reshape(-1).copy()
    cur = value(u)
    history = [cur] if record else []
    degenerate = 0
    converged = False
    it = 0
    if spectrum[-1] - lam_min < DEGENERATE_STEP_TOL:
        # rho is proportional to the identity: every unitary is optimal
        return Ascent(u.reshape(d, d), cur, 0, True, 0, history)
    while it < max_iterations:
        it += 1
        w = shifted @ u
        if np.linalg.norm(w) < DEGENERATE_STEP_TOL:
            # rho vec(U) vanishes: no ascent direction, start over elsewhere
            degenerate += 1
            u = haar_unitary(d, rng).reshape(-1)
            cur = value(u)
            if record:
                history.append(cur)
            continue
        u_new = polar_unitary(w.reshape(d, d)).reshape(-1)
        new = value(u_new)
        gain = new - cur
        u, cur = u_new, new
        if record:
            history.append(cur)
        if gain < tol:
            converged = True
            break
    return Ascent(u.reshape(d, d), cur, it, converged, degenerate, history)


def fef_maximize(rho: DensityMatrix, config: OptimizerConfig | None = None) -> FefResult:
    """Best polar ascent over deterministic seeds followed by Haar-random seeds.

    Restart ``r`` draws from ``default_rng([seed, r])``, so the result does not
    depend on the order in which restarts run. The first restart reaching the
    best value within 1e-12 wins.
    """
    config = config or OptimizerConfig()
    m = _matrix(rho)
    d = int(round(np.sqrt(m.shape[0])))
    starts = deterministic_starts(d)[: config.restarts]

    best = None
    iterations = 0
    restarts_used = 0
    any_converged = False
    values = []
    for r in range(config.restarts):
        rng = np.random.default_rng([config.seed, r])
        u0 = starts[r] if r < len(starts) else haar_unitary(d, rng)
        run = polar_ascent(m, u0, config.max_iterations, config.tol, rng=rng)
        iterations += run.iterations
        restarts_used += 1 + run.degenerate_restarts
        any_converged |= run.converged
        values.append(run.value)
        if best is None or run.value > best.value + TIE_TOL:
            best = run
    if not any_converged:
        log.warning("every restart hit the %d-iteration cap", config.max_iterations)

    u = best.unitary
    return FefResult(
        value=fef_objective(m, u),
        optimal_unitary=u,
        iterations_total=iterations,
        restarts_used=restarts_used,
        converged=any_converged,
        spectral_bound=float(hermitian_eig(m)[0][0]),
        restart_values=values,
    )


def su2_grid(resolution: int) -> np.ndarray:
    """Vectorized ``U(theta, alpha, beta)`` over the grid, shape ``(resolution^3, 4)``.

    ``U = [[e^{i alpha} cos t, e^{i beta} sin t], [-e^{-i beta} sin t, e^{-i alpha} cos t]]``
    covers U(2) up to a global phase, which the objective ignores.
    """
    t = np.linspace(0, np.pi / 2, resolution)
    ang = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
    t, a, b = (x.ravel() for x in np.meshgrid(t, ang, ang, indexing="ij"))
    c, s = np.cos(t), np.sin(t)
    ea, eb = np.exp(1j * a), np.exp(1j * b)
    return np.stack([ea * c, eb * s, -eb.conj() * s, ea.conj() * c], axis=1)


def fef_oracle_grid_d2(rho: DensityMatrix, resolution: int = 60) -> float:
    """Exhaustive grid search over U(2) for a two-qubit state, polished by polar ascent."""
    m = _matrix(rho)
    if m.shape != (4, 4):
        raise ValueError("the grid oracle only handles d = 2")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    u = su2_grid(resolution)
    vals = np.einsum("ni,ij,nj->n", u.conj(), m, u).real / 2
    start = u[np.argmax(vals)].reshape(2, 2)
    polished = polar_ascent(m, start, max_iterations=10000, tol=1e-15)
    return max(float(polished.value), float(vals.max()))
