"""How many restarts does the optimizer need? Spread of restart values on random states."""

import argparse
from dataclasses import dataclass

import numpy as np

from fefrac.numeric import OptimizerConfig, fef_maximize
from fefrac.states import random_density


@dataclass(frozen=True)
class StabilityConfig:
    d: int = 3
    states: int = 20
    restarts: int = 20
    seed: int = 0


def run(cfg: StabilityConfig):
    rng = np.random.default_rng(cfg.seed)
    first_hit = []
    spread = []
    for _ in range(cfg.states):
        rho = random_density(cfg.d, int(rng.integers(1, cfg.d**2 + 1)), rng)
        res = fef_maximize(rho, OptimizerConfig(restarts=cfg.restarts, seed=cfg.seed))
        vals = np.asarray(res.restart_values)
        first_hit.append(int(np.argmax(vals >= res.value - 1e-9)))
        spread.append(vals.max() - vals.min())
    print(f"d={cfg.d} states={cfg.states}")
    print(f"  restart index reaching the best value: max={max(first_hit)} mean={np.mean(first_hit):.2f}")
    print(f"  spread of restart values: max={max(spread):.2e} median={np.median(spread):.2e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--states", type=int, default=20)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    run(StabilityConfig(a.d, a.states, a.restarts, a.seed))
