import random
import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from reoimc.flow import FlowOrder
from reoimc.imc import Imc, StateLabel

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
CIRCUITS = ROOT / "circuits"

PORTS = ("a", "b", "c", "d")
RATES = (0.5, 1.0, 1.5, 2.0, 3.0, 0.1 + 0.2)

ACTIONS = [frozenset(c) for k in range(4) for c in combinations(PORTS, k)]


def _label_pool(size=256, seed=0):
    rng = random.Random(seed)
    pool = [StateLabel()]
    while len(pool) < size:
        parts = [frozenset(rng.sample(PORTS, rng.choice((0, 0, 1, 2)))) for _ in range(4)]
        pool.append(StateLabel(*parts, rng.choice(("", "", "e", "f"))))
    return pool


LABELS = _label_pool()


@st.composite
def imcs(draw, max_states=8):
    """Random models; each transition is drawn as one integer to keep
    generation cheap."""
    n = draw(st.integers(1, max_states))
    na, nr = len(ACTIONS), len(RATES)
    states = [LABELS[k] for k in draw(st.lists(st.integers(0, len(LABELS) - 1), min_size=n, max_size=n))]
    icodes = draw(st.lists(st.integers(0, n * n * na - 1), max_size=2 * n))
    mcodes = draw(st.lists(st.integers(0, n * n * nr - 1), max_size=2 * n))
    itrans = [(c // (n * na), ACTIONS[c % na], c // na % n) for c in icodes]
    mtrans = [(c // (n * nr), RATES[c % nr], c // nr % n) for c in mcodes]
    return Imc.build(states, itrans, mtrans, draw(st.integers(0, n - 1)))


@st.composite
def flows(draw):
    pairs = draw(st.lists(st.tuples(st.sampled_from(PORTS), st.sampled_from(PORTS)), max_size=4))
    return FlowOrder.from_pairs(pairs)


@pytest.fixture
def circuit_text():
    def read(name):
        return (CIRCUITS / f"{name}.reo").read_text()

    return read
