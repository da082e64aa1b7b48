"""Sweep isotropic and Werner families, comparing closed forms with the optimizer."""

import argparse
from dataclasses import dataclass

import numpy as np

from fefrac import exact
from fefrac.numeric import OptimizerConfig, fef_maximize
from fefrac.states import isotropic, werner


@dataclass(frozen=True)
class ScanConfig:
    dims: tuple = (2, 3, 4, 5)
    steps: int = 21
    restarts: int = 20
    seed: int = 0


def scan(cfg: ScanConfig):
    opt = OptimizerConfig(restarts=cfg.restarts, seed=cfg.seed)
    for family, build, closed, lo in (("isotropic", isotropic, exact.fef_isotropic, 0.0),
                                      ("werner", werner, exact.fef_werner, -1.0)):
        for d in cfg.dims:
            errs = [abs(fef_maximize(build(d, f), opt).value - closed(d, f))
                    for f in np.linspace(lo, 1.0, cfg.steps)]
            print(f"{family:9s} d={d}  max|exact-numeric|={max(errs):.2e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    scan(ScanConfig(dims=tuple(a.dims), steps=a.steps, seed=a.seed))
