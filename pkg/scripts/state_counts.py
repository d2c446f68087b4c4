"""State counts of design-phase models versus classic channel products.

For chains of k lossy channels joined by delayed nodes, compare the pruned
design model with the plain product of the classic channel models (which
carry arrival rates at every end).

    python3 scripts/state_counts.py --max-length 4
"""

import argparse
from dataclasses import dataclass
from functools import reduce

from reoimc import Channel, Circuit, NodeSpec, compose_circuit, make_classic_channel, parallel


@dataclass
class Config:
    max_length: int = 3
    gamma: float = 1.0


def chain(k: int, g: float) -> Circuit:
    ports = [f"p{i}" for i in range(2 * k)]
    chans = [
        Channel("lossy", ports[2 * i], ports[2 * i + 1], {"gamma_ab": g, "gamma_aL": g})
        for i in range(k)
    ]
    nodes = [
        NodeSpec((ports[2 * i + 1],), (ports[2 * i + 2],), g, g, name=f"n{i}")
        for i in range(k - 1)
    ]
    return Circuit(f"chain{k}", chans, nodes)


def classic_product(c: Circuit, g: float):
    models = [
        make_classic_channel(ch.kind, ch.source, ch.sink, gamma_a=g, gamma_b=g, **ch.rates)
        for ch in c.channels
    ]
    return reduce(parallel, models)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-length", type=int, default=Config.max_length)
    cfg = Config(max_length=parser.parse_args().max_length)
    print(f"{'channels':>8} {'design':>8} {'classic':>8}")
    for k in range(1, cfg.max_length + 1):
        c = chain(k, cfg.gamma)
        print(f"{k:>8} {compose_circuit(c).n:>8} {classic_product(c, cfg.gamma).n:>8}")


if __name__ == "__main__":
    main()
