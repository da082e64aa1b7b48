"""Closed-form fully entangled fractions, related measures, and bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionError, partial_transpose_first, polar_unitary, trace_norm
from .states import DensityMatrix, PureState, max_entangled, mixture, schmidt_decompose

PHASE_TOL = 1e-6
EQUALITY_TOL = 1e-6
ZERO_SCHMIDT_TOL = 1e-8


def fef_pure(psi: PureState) -> float:
    """FEF of a pure state, ``(sum_i lambda_i)^2 / d``."""
    lam = schmidt_decompose(psi).coefficients
    return float(np.sum(lam) ** 2 / psi.d)


def _check_d(d: int):
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")


def fef_isotropic(d: int, f: float) -> float:
    _check_d(d)
    if not 0 <= f <= 1:
        raise ValueError(f"isotropic fidelity must lie in [0, 1], got {f!r}")
    if f >= 1 / d**2:
        return float(f)
    return (1 - f) / (d**2 - 1)


def fef_werner(d: int, f: float) -> float:
    """FEF of the Werner state with swap expectation ``f``.

    Below ``f = 1/d`` the optimum is the minimum of ``tr(U U*)`` over unitaries,
    which is ``-d`` for even ``d`` and ``-(d - 2)`` for odd ``d``.
    """
    _check_d(d)
    if not -1 <= f <= 1:
        raise ValueError(f"Werner parameter must lie in [-1, 1], got {f!r}")
    if f >= 1 / d:
        return (f + 1) / (d * (d + 1))
    if d % 2 == 0:
        return (1 - f) / (d * (d - 1))
    return (d**2 - d**2 * f + d * f + d - 2) / (d**2 * (d**2 - 1))


def negativity(rho: DensityMatrix) -> float:
    return (trace_norm(partial_transpose_first(rho.matrix, rho.d)) - 1) / 2


def geometric_measure_pure(psi: PureState) -> tuple[float, float]:
    """Return ``(E, lambda_1^2)`` with ``E = 1 - lambda_1^2``."""
    lam1_sq = float(schmidt_decompose(psi).coefficients[0] ** 2)
    return 1 - lam1_sq, lam1_sq


def concurrence_pure(psi: PureState) -> float:
    # generalized pure-state concurrence sqrt(2 (1 - tr rho_A^2))
    lam = schmidt_decompose(psi).coefficients
    return float(np.sqrt(max(2 * (1 - np.sum(lam**4)), 0.0)))


def _check_fef_range(fef: float, d: int):
    _check_d(d)
    if not 1 / d**2 - 1e-12 <= fef <= 1 + 1e-12:
        raise ValueError(f"FEF {fef!r} outside [1/d^2, 1] for d={d}")


def concurrence_lower_bound(fef: float, d: int) -> float:
    """Concurrence lower bound ``max(sqrt(2/(d(d-1))) (d F - 1), 0)``."""
    _check_fef_range(fef, d)
    return max(np.sqrt(2 / (d * (d - 1))) * (d * fef - 1), 0.0)


def teleportation_fidelity(fef: float, d: int) -> tuple[float, bool]:
    """Optimal teleportation fidelity ``(F d + 1)/(d + 1)`` and whether it beats classical."""
    _check_fef_range(fef, d)
    return (fef * d + 1) / (d + 1), bool(fef > 1 / d)


def theorem2_bounds(rho: DensityMatrix) -> tuple[float, float]:
    return 1 / rho.d**2, 1.0


def _common_d(pures) -> int:
    pures = list(pures)
    if not pures:
        raise ValueError("need at least one pure state")
    d = pures[0].d
    if any(p.d != d for p in pures):
        raise DimensionError("all pure states must share the same local dimension")
    return d


def mixture_upper_bound(weights, pures) -> float:
    """``sum_i p_i F(psi_i)``, an upper bound on the FEF of the mixture."""
    pures = list(pures)
    _common_d(pures)
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(pures) or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("weights must be a probability vector matching the pure states")
    return float(sum(w * fef_pure(p) for w, p in zip(weights, pures)))


def closest_mes_unitary(psi: PureState) -> np.ndarray:
    """``W = u1^dagger u2^*`` from the Schmidt form: ``(W kron I)|psi+>`` is closest to ``psi``.

    Equivalently the unitary polar factor of the coefficient matrix.
    """
    s = schmidt_decompose(psi)
    return s.u1.conj().T @ s.u2.conj()


def closest_mes_pure(psi: PureState) -> tuple[PureState, float]:
    w = closest_mes_unitary(psi)
    mes = PureState(psi.d, np.kron(w, np.eye(psi.d)) @ max_entangled(psi.d).amplitudes)
    overlap = abs(np.vdot(psi.amplitudes, mes.amplitudes)) ** 2
    return mes, float(overlap)


def equal_up_to_phase(a, b, tol: float = PHASE_TOL) -> bool:
    """``min_theta ||a - e^{i theta} b||_max <= tol`` using ``theta = arg tr(b^dagger a)``."""
    t = np.trace(b.conj().T @ a)
    phase = t / abs(t) if abs(t) > 0 else 1.0
    return bool(np.max(np.abs(a - phase * b)) <= tol)


class ConditionStatus(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class DecompositionCheckResult:
    fef_mixture: float
    weighted_pure_sum: float
    equality_holds: bool
    condition_status: ConditionStatus


def decomposition_equality_check(weights, pures, config=None) -> DecompositionCheckResult:
    """Test whether the FEF of ``sum_t p_t |psi_t><psi_t|`` equals ``sum_t p_t F(psi_t)``.

    Equality is decided numerically. Independently, the local-unitary
    condition is checked: the products ``u1^dagger u2^*`` of all components
    must coincide up to a global phase. Those products are the polar factors
    of the coefficient matrices, so they are unique only for full-rank
    components; a vanishing Schmidt coefficient leaves the check inconclusive.
    """
    from .numeric import OptimizerConfig, fef_maximize

    pures = list(pures)
    _common_d(pures)
    bound = mixture_upper_bound(weights, pures)
    rho = mixture(weights, pures)
    value = fef_maximize(rho, config or OptimizerConfig()).value

    if len(pures) == 1:
        status = ConditionStatus.SATISFIED
    elif any(schmidt_decompose(p).coefficients[-1] < ZERO_SCHMIDT_TOL for p in pures):
        status = ConditionStatus.INDETERMINATE
    else:
        ws = [polar_unitary(p.coefficient_matrix()) for p in pures]
        same = all(equal_up_to_phase(w, ws[0]) for w in ws[1:])
        status = ConditionStatus.SATISFIED if same else ConditionStatus.VIOLATED
    return DecompositionCheckResult(value, bound, bool(abs(value - bound) <= EQUALITY_TOL), status)


@dataclass(frozen=True)
class SuperpositionBounds:
    """Bounds on ``|gamma| F^(1/2)(psi)`` for ``psi = (sum_i c_i phi_i) / gamma``."""

    lower: float
    upper: float


def superposition_value(coeffs, states) -> float:
    """``|gamma| F^(1/2)(psi)``, the quantity the superposition bounds sandwich."""
    states = list(states)
    x = sum(c * s.amplitudes for c, s in zip(coeffs, states))
    gamma = np.linalg.norm(x)
    if gamma < 1e-14:
        raise ValueError("superposition vector is zero")
    psi = PureState(states[0].d, x / gamma)
    return float(gamma * np.sqrt(fef_pure(psi)))


def superposition_bounds_multi(coeffs, states) -> SuperpositionBounds:
    """Bounds for an m-term superposition ``sum_i c_i |phi_i>``.

    ``lower = max(max_i (a_i - sum_{j != i} a_j), 1/d^2)`` and
    ``upper = min(sum_i a_i, 1)`` with ``a_i = |c_i| F^(1/2)(phi_i)``.
    The constants 1/d^2 and 1 are only guaranteed when ``d^(-3/2) <= |gamma| <= 1``,
    e.g. for normalized coefficients over orthonormal components; outside that
    regime only the triangle-inequality parts are valid.
    """
    states = list(states)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if len(coeffs) != len(states) or not states:
        raise ValueError("need one coefficient per state")
    d = _common_d(states)
    x = sum(c * s.amplitudes for c, s in zip(coeffs, states))
    if np.linalg.norm(x) < 1e-14:
        raise ValueError("superposition vector is zero")
    a = np.array([abs(c) * np.sqrt(fef_pure(s)) for c, s in zip(coeffs, states)])
    total = a.sum()
    lower = max(float(np.max(2 * a - total)), 1 / d**2)
    upper = min(float(total), 1.0)
    return SuperpositionBounds(lower, upper)


def superposition_bounds(alpha, beta, phi1: PureState, phi2: PureState) -> SuperpositionBounds:
    return superposition_bounds_multi([alpha, beta], [phi1, phi2])
