"""Strong bisimulation for interactive Markov chains.

Two states are equivalent when they can match each other's interactive moves
(same action set, equivalent targets) and have the same cumulative Markovian
rate into every equivalence class.  No maximal-progress cut is applied.
"""

from __future__ import annotations

from collections import defaultdict

from .imc import Imc

# relative tolerance on cumulative rates; applied by rounding to significant digits
RATE_DIGITS = 9


def _canon(rate: float) -> float:
    return float(f"{rate:.{RATE_DIGITS}g}")


def coarsest_partition(m: Imc) -> list[int]:
    """Block id per state for the coarsest strong bisimulation.

    Signature refinement: every round recomputes each state's signature
    against the current blocks and splits blocks whose members disagree.
    """
    n = m.n
    block = [0] * n
    count = 1
    while True:
        sigs: dict[tuple, int] = {}
        new = [0] * n
        for s in range(n):
            inter = frozenset((x, block[t]) for x, t in m.out_inter.get(s, ()))
            cum: dict[int, float] = defaultdict(float)
            for r, t in m.out_markov.get(s, ()):
                cum[block[t]] += r
            markov = frozenset((b, _canon(r)) for b, r in cum.items())
            # keep the previous block in the key so refinement is monotone
            key = (block[s], inter, markov)
            new[s] = sigs.setdefault(key, len(sigs))
        if len(sigs) == count:
            return _normalise(new)
        block, count = new, len(sigs)


def _normalise(block: list[int]) -> list[int]:
    """Renumber blocks in order of first occurrence."""
    ids: dict[int, int] = {}
    return [ids.setdefault(b, len(ids)) for b in block]


def strong_bisim_minimize(m: Imc) -> Imc:
    """Quotient of ``m`` under the coarsest strong bisimulation.

    Each class is represented by its lowest-numbered state, whose label it
    keeps; class order follows representatives.
    """
    block = coarsest_partition(m)
    k = max(block) + 1
    rep = [None] * k
    for s, b in enumerate(block):
        if rep[b] is None:
            rep[b] = s
    reps = frozenset(rep)
    itrans = {(block[s], x, block[t]) for s, x, t in m.itrans if s in reps}
    mtrans = [(block[s], r, block[t]) for s, r, t in m.mtrans if s in reps]
    return Imc.build(
        [m.states[s] for s in rep],
        itrans,
        mtrans,
        block[m.initial],
        alphabet=m.alphabet,
    )


def disjoint_union(m1: Imc, m2: Imc) -> Imc:
    off = m1.n
    return Imc.build(
        m1.states + m2.states,
        list(m1.itrans) + [(s + off, x, t + off) for s, x, t in m2.itrans],
        list(m1.mtrans) + [(s + off, r, t + off) for s, r, t in m2.mtrans],
        m1.initial,
        alphabet=m1.alphabet | m2.alphabet,
    )


def are_bisimilar(m1: Imc, m2: Imc) -> bool:
    """True iff the initial states are strongly bisimilar in the disjoint union."""
    block = coarsest_partition(disjoint_union(m1, m2))
    return block[m1.initial] == block[m1.n + m2.initial]
