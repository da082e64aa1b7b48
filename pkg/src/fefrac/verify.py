"""Named property suites checked on random states.

Each check returns a :class:`Check` holding the worst observed violation
(0 when the property holds with margin) so reports show how close a run came.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .linalg import haar_unitary
from .numeric import OptimizerConfig, fef_maximize
from .states import (
    PureState,
    basis_state,
    max_entangled,
    mixture,
    permutation_mixture,
    random_density,
    random_pure,
    validate_density,
)

SUITES = ("bounds", "relations", "mixtures", "superposition")


@dataclass
class Check:
    name: str
    passed: bool
    worst: float
    seed: int
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"{tag} {self.name}: worst={self.worst:.3e} seed={self.seed}{extra}"


def _violation(values, tol) -> tuple[float, bool]:
    worst = max([0.0, *values])
    return worst, worst <= tol


def random_product_pure(d: int, rng) -> PureState:
    a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    b = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState.from_vector(np.kron(a, b), d)


def random_orthonormal_pair(d: int, rng) -> tuple[PureState, PureState]:
    p = random_pure(d, rng).amplitudes
    q = random_pure(d, rng).amplitudes
    q = q - np.vdot(p, q) * p
    return PureState(d, p), PureState.from_vector(q, d)


def random_unit_coeffs(m: int, rng) -> np.ndarray:
    c = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return c / np.linalg.norm(c)


def bounds_suite(d: int, samples: int, seed: int, config: OptimizerConfig | None = None) -> list[Check]:
    config = config or OptimizerConfig(seed=seed)
    rng = np.random.default_rng(seed)
    lo, hi, cert = [], [], []
    for _ in range(samples):
        rho = random_density(d, int(rng.integers(1, d * d + 1)), rng)
        r = fef_maximize(rho, config)
        lo.append(1 / d**2 - r.value)
        hi.append(r.value - 1)
        cert.append(r.value - r.spectral_bound)
    checks = []
    worst, ok = _violation(lo + hi, 1e-9)
    checks.append(Check("theorem2_range", ok, worst, seed))
    worst, ok = _violation(cert, 1e-9)
    checks.append(Check("spectral_certificate", ok, worst, seed))

    mixed = validate_density(np.eye(d * d) / d**2, d)
    v = fef_maximize(mixed, config).value
    checks.append(Check("maximally_mixed", abs(v - 1 / d**2) <= 1e-6, abs(v - 1 / d**2), seed, f"fef={v:.6g}"))
    v = fef_maximize(max_entangled(d).density(), config).value
    checks.append(Check("maximally_entangled", abs(v - 1) <= 1e-9, abs(v - 1), seed, f"fef={v:.6g}"))

    sep = []
    for _ in range(samples):
        k = int(rng.integers(1, 5))
        w = rng.dirichlet(np.ones(k))
        rho = mixture(w, [random_product_pure(d, rng) for _ in range(k)])
        sep.append(fef_maximize(rho, config).value - 1 / d)
    worst, ok = _violation(sep, 1e-9)
    checks.append(Check("separable_at_most_1_over_d", ok, worst, seed))

    corr = []
    for _ in range(samples):
        e, _ = exact.geometric_measure_pure(random_pure(d, rng))
        corr += [-e, e - (d - 1) / d]
    worst, ok = _violation(corr, 1e-12)
    checks.append(Check("geometric_measure_range", ok, worst, seed))
    return checks


def relations_suite(d: int, samples: int, seed: int, config: OptimizerConfig | None = None) -> list[Check]:
    config = config or OptimizerConfig(seed=seed)
    rng = np.random.default_rng(seed)
    neg, geo_f, geo_l, conc, mes, num = [], [], [], [], [], []
    for _ in range(samples):
        psi = random_pure(d, rng)
        f = exact.fef_pure(psi)
        e, lam1_sq = exact.geometric_measure_pure(psi)
        neg.append(abs(exact.negativity(psi.density()) - (d * f - 1) / 2))
        geo_f.append(f - d * (1 - e))
        geo_l.append(f - d * lam1_sq)
        conc.append(exact.concurrence_lower_bound(f, d) - exact.concurrence_pure(psi))
        mes.append(abs(exact.closest_mes_pure(psi)[1] - f))
        num.append(abs(fef_maximize(psi.density(), config).value - f))
    checks = []
    for name, vals, tol in [
        ("negativity_identity", neg, 1e-9),
        ("fef_le_d_times_1_minus_E", geo_f, 1e-9),
        ("d_lambda1_sq_ge_fef", geo_l, 1e-9),
        ("concurrence_lower_bound", conc, 1e-9),
        ("closest_mes_overlap", mes, 1e-9),
        ("pure_formula_vs_numeric", num, 1e-6),
    ]:
        worst, ok = _violation(vals, tol)
        checks.append(Check(name, ok, worst, seed))

    sep = [abs(exact.fef_pure(random_product_pure(d, rng)) - 1 / d) for _ in range(samples)]
    worst, ok = _violation(sep, 1e-12)
    checks.append(Check("separable_pure_fef_1_over_d", ok, worst, seed))
    return checks


def random_decomposition(d: int, m: int, rng) -> tuple[np.ndarray, list[PureState]]:
    w = rng.dirichlet(np.ones(m))
    return w, [random_pure(d, rng) for _ in range(m)]


def counterexample_decomposition(n: int, rng) -> tuple[np.ndarray, list[PureState]]:
    """Random ``n``-term decomposition of ``(|00><00| + |11><11|)/2`` into ``a|00> + b|11>`` states.

    Rows of an isometry ``V`` mix the eigenvectors: ``sqrt(p_t) psi_t = sum_k V[t, k] |kk> / sqrt 2``.
    """
    v = haar_unitary(n, rng)[:, :2]
    weights, pures = [], []
    for a, b in v:
        p = (abs(a) ** 2 + abs(b) ** 2) / 2
        x = np.zeros(4, dtype=np.complex128)
        x[0], x[3] = a, b
        weights.append(p)
        pures.append(PureState.from_vector(x, 2))
    weights = np.array(weights)
    return weights / weights.sum(), pures


def mixtures_suite(d: int, samples: int, seed: int, config: OptimizerConfig | None = None) -> list[Check]:
    config = config or OptimizerConfig(seed=seed)
    rng = np.random.default_rng(seed)
    gap = []
    for _ in range(samples):
        w, pures = random_decomposition(d, 3, rng)
        gap.append(fef_maximize(mixture(w, pures), config).value - exact.mixture_upper_bound(w, pures))
    checks = []
    worst, ok = _violation(gap, 1e-8)
    checks.append(Check("mixture_upper_bound", ok, worst, seed))

    perm_err, perm_eq = [], True
    for _ in range(max(1, samples // 10)):
        sigma = rng.permutation(d)
        p = rng.dirichlet(np.ones(d))
        rho = permutation_mixture(d, sigma, p)
        perm_err.append(abs(fef_maximize(rho, config).value - 1 / d))
        pures = [basis_state(d, i, s) for i, s in enumerate(sigma)]
        perm_eq &= exact.decomposition_equality_check(p, pures, config).equality_holds
    worst, ok = _violation(perm_err, 1e-6)
    checks.append(Check("permutation_mixture_fef", ok and perm_eq, worst, seed))

    rho = 0.5 * (basis_state(2, 0, 0).density().matrix + basis_state(2, 1, 1).density().matrix)
    v = fef_maximize(validate_density(rho, 2), config).value
    checks.append(Check("counterexample_fef", abs(v - 0.5) <= 1e-6, abs(v - 0.5), seed, f"fef={v:.6g}"))
    excess = []
    for _ in range(max(1, samples // 10)):
        w, pures = counterexample_decomposition(int(rng.integers(2, 5)), rng)
        excess.append(exact.mixture_upper_bound(w, pures) - 0.5)
    checks.append(Check("counterexample_sums_exceed", min(excess) > 0, max(0.0, -min(excess)), seed,
                        f"min_excess={min(excess):.3e}"))
    return checks


def superposition_suite(d: int, samples: int, seed: int, config: OptimizerConfig | None = None) -> list[Check]:
    rng = np.random.default_rng(seed)
    two, many = [], []
    for _ in range(samples):
        phi1, phi2 = random_orthonormal_pair(d, rng)
        alpha, beta = random_unit_coeffs(2, rng)
        b = exact.superposition_bounds(alpha, beta, phi1, phi2)
        x = exact.superposition_value([alpha, beta], [phi1, phi2])
        two += [b.lower - x, x - b.upper]

        q, _ = np.linalg.qr(rng.standard_normal((d * d, 3)) + 1j * rng.standard_normal((d * d, 3)))
        states = [PureState(d, q[:, i]) for i in range(3)]
        c = random_unit_coeffs(3, rng)
        b = exact.superposition_bounds_multi(c, states)
        x = exact.superposition_value(c, states)
        many += [b.lower - x, x - b.upper]
    checks = []
    worst, ok = _violation(two, 1e-8)
    checks.append(Check("superposition_sandwich", ok, worst, seed))
    worst, ok = _violation(many, 1e-8)
    checks.append(Check("superposition_sandwich_3_terms", ok, worst, seed))

    up, low = boundary_examples(d)
    checks.append(Check("upper_bound_attained", up <= 1e-12, up, seed))
    checks.append(Check("lower_bound_attained", low <= 1e-12, low, seed))
    return checks


def boundary_examples(d: int) -> tuple[float, float]:
    """Distances to the bound for the two textbook superpositions.

    ``(|00> + |11>)/sqrt 2`` meets the upper bound; ``|00>`` written as
    ``sqrt 2 (|00> - |11>)/sqrt 2 + |11>`` meets the lower bound.
    """
    s00, s11 = basis_state(d, 0, 0), basis_state(d, 1, 1)
    c = 1 / np.sqrt(2)
    b = exact.superposition_bounds(c, c, s00, s11)
    up = abs(exact.superposition_value([c, c], [s00, s11]) - b.upper)
    minus = PureState.from_vector(s00.amplitudes - s11.amplitudes, d)
    b = exact.superposition_bounds(np.sqrt(2), 1, minus, s11)
    low = abs(exact.superposition_value([np.sqrt(2), 1], [minus, s11]) - b.lower)
    return up, low


def run_suite(name: str, d: int, samples: int, seed: int) -> list[Check]:
    fn = {
        "bounds": bounds_suite,
        "relations": relations_suite,
        "mixtures": mixtures_suite,
        "superposition": superposition_suite,
    }[name]
    return fn(d, samples, seed)
