"""Compare deployed channels with their classic counterparts by bisimulation,
over a grid of arrival and processing rates.

    python3 scripts/deployment_check.py --seed 1 --trials 20
"""

import argparse
import random
from dataclasses import dataclass

from reoimc import Channel, Circuit, IoSpec, are_bisimilar, deploy_circuit, make_classic_channel

RATE_NAMES = {
    "sync": ("gamma_ab",),
    "drain": ("gamma_ab",),
    "lossy": ("gamma_ab", "gamma_aL"),
    "fifo": ("gamma_aB", "gamma_Bb"),
}


@dataclass
class Config:
    trials: int = 10
    seed: int = 0
    low: float = 0.1
    high: float = 10.0


def trial(kind: str, rng: random.Random, cfg: Config) -> bool:
    draw = lambda: round(rng.uniform(cfg.low, cfg.high), 3)
    rates = {k: draw() for k in RATE_NAMES[kind]}
    ga, gb = draw(), draw()
    role_b = "writer" if kind == "drain" else "reader"
    c = Circuit(
        kind,
        [Channel(kind, "a", "b", rates)],
        [],
        [IoSpec("writer", "a", ga), IoSpec(role_b, "b", gb)],
    )
    classic = make_classic_channel(kind, "a", "b", gamma_a=ga, gamma_b=gb, **rates)
    return are_bisimilar(deploy_circuit(c, erase_labels=False), classic)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=Config.trials)
    parser.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(parser.parse_args()))
    rng = random.Random(cfg.seed)
    for kind in RATE_NAMES:
        ok = sum(trial(kind, rng, cfg) for _ in range(cfg.trials))
        print(f"{kind:>6}: {ok}/{cfg.trials} bisimilar")


if __name__ == "__main__":
    main()
