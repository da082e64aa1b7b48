"""Command-line interface: ``fefrac compute|family|verify|random``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import exact
from .numeric import OptimizerConfig, fef_maximize
from .stateio import StateFileError, read_state, write_state
from .states import DensityMatrix, PureState, isotropic, max_entangled, random_density, random_pure, swap_operator, werner
from .verify import SUITES, run_suite

FAMILY_TOL = 1e-8
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NO_EXACT = 3


def _fail(msg: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def detect_family(rho: DensityMatrix) -> tuple[str, float] | None:
    """Identify isotropic or Werner states by fitting ``f`` and checking the residual."""
    d, m = rho.d, rho.matrix
    p = max_entangled(d).amplitudes
    f = float(np.vdot(p, m @ p).real)
    if -1e-12 <= f <= 1 + 1e-12:
        f = min(max(f, 0.0), 1.0)
        if np.max(np.abs(m - isotropic(d, f).matrix)) <= FAMILY_TOL:
            return "isotropic", f
    f = float(np.trace(m @ swap_operator(d)).real)
    if -1 - 1e-12 <= f <= 1 + 1e-12:
        f = min(max(f, -1.0), 1.0)
        if np.max(np.abs(m - werner(d, f).matrix)) <= FAMILY_TOL:
            return "werner", f
    return None


def exact_fef(state) -> tuple[float, str] | None:
    if isinstance(state, PureState):
        return exact.fef_pure(state), "pure"
    w, v = np.linalg.eigh(state.matrix)
    if w[-1] > 1 - 1e-9:
        return exact.fef_pure(PureState.from_vector(v[:, -1], state.d)), "pure"
    fam = detect_family(state)
    if fam is None:
        return None
    name, f = fam
    fn = exact.fef_isotropic if name == "isotropic" else exact.fef_werner
    return fn(state.d, f), f"{name}(f={f!r})"


def _pairs(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def cmd_compute(args) -> int:
    try:
        state = read_state(args.input)
    except StateFileError as exc:
        return _fail(str(exc))
    t0 = time.perf_counter()
    rho = state.density() if isinstance(state, PureState) else state
    d = state.d
    report: dict = {"d": d, "kind": "pure" if isinstance(state, PureState) else "density",
                    "method": args.method, "seed": args.seed, "fef": {}}

    if args.method in ("exact", "both"):
        ex = exact_fef(state)
        if ex is None:
            if args.method == "exact":
                return _fail("exact FEF needs a pure state or an isotropic/Werner state", EXIT_NO_EXACT)
            print("note: no closed form for this state, reporting numeric value only", file=sys.stderr)
            report["fef"]["exact"] = None
        else:
            report["fef"]["exact"], report["family"] = ex
    if args.method in ("numeric", "both"):
        cfg = OptimizerConfig(restarts=args.restarts, tol=args.tol, seed=args.seed)
        res = fef_maximize(rho, cfg)
        report["fef"]["numeric"] = res.value
        report["spectral_bound"] = res.spectral_bound
        report["converged"] = res.converged
        report["iterations_total"] = res.iterations_total
        report["restarts_used"] = res.restarts_used
        if args.emit_unitary:
            report["optimal_unitary"] = _pairs(res.optimal_unitary)
    else:
        report["spectral_bound"] = float(np.linalg.eigvalsh(rho.matrix)[-1])
    if report["fef"].get("exact") is not None and "numeric" in report["fef"]:
        report["fef"]["abs_gap"] = abs(report["fef"]["exact"] - report["fef"]["numeric"])

    best = report["fef"].get("numeric", report["fef"].get("exact"))
    low, high = exact.theorem2_bounds(rho)
    report["theorem2_range"] = [low, high]
    fid, useful = exact.teleportation_fidelity(min(max(best, low), high), d)
    report["teleportation"] = {"fidelity": fid, "useful": useful}
    report["seconds"] = round(time.perf_counter() - t0, 6)
    print(json.dumps(report, indent=2))
    return 0


FAMILIES = {
    "isotropic": (isotropic, exact.fef_isotropic, (0.0, 1.0)),
    "werner": (werner, exact.fef_werner, (-1.0, 1.0)),
}


def cmd_family(args) -> int:
    build, closed, (lo, hi) = FAMILIES[args.family]
    if args.d < 2:
        return _fail(f"d must be at least 2, got {args.d}")
    if not lo <= args.f_min <= args.f_max <= hi:
        return _fail(f"{args.family} range must satisfy {lo} <= f-min <= f-max <= {hi}")
    if args.steps < 1:
        return _fail("steps must be positive")
    cfg = OptimizerConfig(restarts=args.restarts, tol=args.tol, seed=args.seed)
    grid = np.linspace(args.f_min, args.f_max, args.steps) if args.steps > 1 else np.array([args.f_min])
    try:
        out = open(args.output, "w", newline="")
    except OSError as exc:
        return _fail(f"cannot write {args.output}: {exc.strerror}")
    with out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["f", "fef_exact", "fef_numeric", "abs_err", "teleport_fidelity", "useful"])
        for f in grid:
            f = float(f)
            fe = closed(args.d, f)
            fn = fef_maximize(build(args.d, f), cfg).value
            fid, useful = exact.teleportation_fidelity(fe, args.d)
            w.writerow([repr(f), repr(fe), repr(fn), repr(abs(fe - fn)), repr(fid), str(useful).lower()])
    return 0


def cmd_verify(args) -> int:
    if not 2 <= args.d <= 6:
        return _fail(f"d must lie in [2, 6], got {args.d}")
    if args.samples < 1:
        return _fail("samples must be at least 1")
    suites = SUITES if args.suite == "all" else (args.suite,)
    ok = True
    for name in suites:
        print(f"[{name}] d={args.d} samples={args.samples}")
        for check in run_suite(name, args.d, args.samples, args.seed):
            print("  " + check.line())
            ok &= check.passed
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else EXIT_FAIL


def cmd_random(args) -> int:
    try:
        if args.kind == "pure":
            state = random_pure(args.d, args.seed)
        else:
            state = random_density(args.d, args.rank if args.rank is not None else args.d**2, args.seed)
    except ValueError as exc:
        return _fail(str(exc))
    try:
        write_state(state, args.output)
    except OSError as exc:
        return _fail(f"cannot write {args.output}: {exc.strerror}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fefrac", description="Fully entangled fraction of d x d states.")
    sub = p.add_subparsers(dest="command", required=True)

    def optimizer_flags(sp):
        sp.add_argument("--restarts", type=int, default=20)
        sp.add_argument("--tol", type=float, default=1e-12)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("compute", help="FEF of a state file")
    sp.add_argument("input")
    sp.add_argument("--method", choices=("exact", "numeric", "both"), default="both")
    sp.add_argument("--emit-unitary", action="store_true")
    optimizer_flags(sp)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("family", help="scan an isotropic or Werner family to CSV")
    sp.add_argument("family", choices=tuple(FAMILIES))
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--f-min", type=float, required=True)
    sp.add_argument("--f-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=21)
    sp.add_argument("--output", "-o", required=True)
    optimizer_flags(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("suite", choices=(*SUITES, "all"))
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("random", help="write a random state file")
    sp.add_argument("kind", choices=("pure", "density"))
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", "-o", required=True)
    sp.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
