"""Steady state of a deployed sync channel, solved and simulated.

    python3 scripts/sync_steady_state.py --gamma-a 1 --gamma-b 1 --gamma-ab 1 --jumps 1000000
"""

import argparse
from dataclasses import dataclass

from reoimc import Channel, Circuit, IoSpec, deploy_circuit, simulate_occupancy, steady_state, to_ctmc


@dataclass
class Config:
    gamma_a: float = 1.0
    gamma_b: float = 1.0
    gamma_ab: float = 1.0
    jumps: int = 10**6
    seed: int = 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--gamma-a", type=float, default=Config.gamma_a)
    parser.add_argument("--gamma-b", type=float, default=Config.gamma_b)
    parser.add_argument("--gamma-ab", type=float, default=Config.gamma_ab)
    parser.add_argument("--jumps", type=int, default=Config.jumps)
    parser.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(parser.parse_args()))

    c = Circuit(
        "Sync",
        [Channel("sync", "a", "b", {"gamma_ab": cfg.gamma_ab})],
        [],
        [IoSpec("writer", "a", cfg.gamma_a), IoSpec("reader", "b", cfg.gamma_b)],
    )
    chain = to_ctmc(deploy_circuit(c, erase_labels=True))
    pi = steady_state(chain)
    occ, se = simulate_occupancy(chain, cfg.jumps, seed=cfg.seed)
    print(f"{'state':<20} {'solved':>10} {'simulated':>10} {'se':>9}")
    for labels, p, o, e in zip(chain.labels, pi, occ, se):
        print(f"{str(labels[0]):<20} {p:>10.6f} {o:>10.6f} {e:>9.2e}")


if __name__ == "__main__":
    main()
