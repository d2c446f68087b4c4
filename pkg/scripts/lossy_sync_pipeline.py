"""Walk the lossy+node+sync connector through every design-phase stage.

Prints the size of each intermediate model and the Markovian edges that
clean-up removes, then the final model.

    python3 scripts/lossy_sync_pipeline.py --gamma-enq 4 --gamma-deq 3
"""

import argparse
from dataclasses import asdict, dataclass

from reoimc import Channel, Circuit, NodeSpec, compose_stages, elaborate_phase, stats


@dataclass
class Config:
    gamma_ab: float = 2.0
    gamma_aL: float = 0.5
    gamma_cd: float = 1.5
    gamma_enq: float = 4.0
    gamma_deq: float = 3.0


def circuit(cfg: Config) -> Circuit:
    return Circuit(
        "LossySyncNode",
        [
            Channel("lossy", "a", "b", {"gamma_ab": cfg.gamma_ab, "gamma_aL": cfg.gamma_aL}),
            Channel("sync", "c", "d", {"gamma_ab": cfg.gamma_cd}),
        ],
        [NodeSpec(("b",), ("c",), cfg.gamma_enq, cfg.gamma_deq, name="m")],
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in asdict(Config()).items():
        parser.add_argument("--" + name.replace("_", "-"), type=float, default=value)
    cfg = Config(**{k: v for k, v in vars(parser.parse_args()).items()})

    stages = compose_stages(elaborate_phase(circuit(cfg)))
    for name, model in stages.items():
        print(f"{name:>13}: {stats(model)}")
    sync, cleaned = stages["synchronized"], stages["cleaned"]
    removed = set(sync.mtrans) - set(cleaned.mtrans)
    print(f"\nremoved by clean-up ({len(removed)}):")
    for s, r, t in sorted(removed):
        print(f"  {sync.states[s]} ~~{r:g}~~> {sync.states[t]}")
    print()
    print(stages["final"])


if __name__ == "__main__":
    main()
