"""CTMC extraction and steady-state analysis of closed models."""

from __future__ import annotations

import logging
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.sparse.csgraph import connected_components

from .imc import Imc, StateLabel, reachable_set

log = logging.getLogger(__name__)


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class Ctmc:
    """Rate edges between tangible states.  ``labels[i]`` lists the labels of
    the IMC states merged into state ``i`` (the tangible state first)."""

    labels: tuple[tuple[StateLabel, ...], ...]
    edges: tuple[tuple[int, float, int], ...]
    initial: int = 0

    @property
    def n(self) -> int:
        return len(self.labels)

    def generator(self) -> np.ndarray:
        q = np.zeros((self.n, self.n))
        for s, r, t in self.edges:
            if s != t:
                q[s, t] += r
                q[s, s] -= r
        return q


@dataclass(frozen=True)
class Edge:
    source: tuple[StateLabel, ...]
    rate: float
    target: tuple[StateLabel, ...]


def _resolve(m: Imc, uniform: bool) -> dict[int, dict[int, float]]:
    """Distribution over tangible states reached from each state by tau moves."""
    taus: dict[int, list[int]] = {}
    for s, x, t in m.itrans:
        taus.setdefault(s, []).append(t)
    memo: dict[int, dict[int, float]] = {}
    active: set[int] = set()

    def go(s):
        if s in memo:
            return memo[s]
        succ = taus.get(s)
        if not succ:
            memo[s] = {s: 1.0}
            return memo[s]
        if len(succ) > 1 and not uniform:
            raise AnalysisError(
                f"tau-nondeterminism in state {m.states[s]} ({len(succ)} tau successors); "
                "use uniform resolution to proceed"
            )
        if s in active:
            raise AnalysisError(f"tau-cycle through state {m.states[s]}")
        active.add(s)
        out: dict[int, float] = {}
        for t in succ:
            for u, p in go(t).items():
                out[u] = out.get(u, 0.0) + p / len(succ)
        active.discard(s)
        memo[s] = out
        return out

    return {s: go(s) for s in range(m.n)}


def to_ctmc(m: Imc, uniform: bool = False) -> Ctmc:
    """Collapse tau moves under maximal progress.

    Every state with an outgoing tau move is vanishing: its Markovian moves
    are pre-empted and incoming rate is forwarded to the tau successor (split
    evenly over several successors when ``uniform`` is set).
    """
    observable = [x for _, x, _ in m.itrans if x]
    if observable:
        raise AnalysisError(
            f"model not closed: observable action {{{','.join(sorted(observable[0]))}}}"
        )
    fanout = Counter(s for s, _, _ in m.itrans)
    if uniform and any(k > 1 for k in fanout.values()):
        log.warning("resolving tau-nondeterminism uniformly; results depend on this choice")
    dist = _resolve(m, uniform)
    live = set(reachable_set(m))
    tangible = [s for s in range(m.n) if s in live and dist[s] == {s: 1.0}]
    index = {s: i for i, s in enumerate(tangible)}
    members: dict[int, list[StateLabel]] = {s: [m.states[s]] for s in tangible}
    for s in sorted(live):
        if s not in index:
            for u in dist[s]:
                members[u].append(m.states[s])
    edges: dict[tuple[int, int], float] = {}
    for s, r, t in m.mtrans:
        if s not in index:
            continue
        for u, p in dist[t].items():
            key = (index[s], index[u])
            edges[key] = edges.get(key, 0.0) + r * p
    init = dist[m.initial]
    return Ctmc(
        labels=tuple(tuple(members[s]) for s in tangible),
        edges=tuple((s, r, t) for (s, t), r in sorted(edges.items())),
        initial=index[min(init, key=lambda u: (-init[u], u))],
    )


def steady_state(c: Ctmc) -> np.ndarray:
    """Stationary distribution of an irreducible chain."""
    if c.n == 1:
        return np.ones(1)
    adj = np.zeros((c.n, c.n))
    for s, _, t in c.edges:
        adj[s, t] = 1.0
    ncomp, comp = connected_components(adj, directed=True, connection="strong")
    if ncomp > 1:
        groups = [[str(c.labels[i][0]) for i in range(c.n) if comp[i] == k] for k in range(ncomp)]
        closed = [
            k
            for k in range(ncomp)
            if not any(comp[s] == k and comp[t] != k for s, _, t in c.edges)
        ]
        absorbing = [groups[k] for k in closed]
        raise AnalysisError(
            f"chain is reducible: {ncomp} strongly connected components; "
            f"closed classes {absorbing}"
        )
    q = c.generator()
    a = q.T.copy()
    a[-1, :] = 1.0
    b = np.zeros(c.n)
    b[-1] = 1.0
    pi = np.linalg.solve(a, b)
    if pi.min() < -1e-12:
        raise AnalysisError(f"negative stationary probability {pi.min():g}")
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def throughput(c: Ctmc, select: Callable[[Edge], bool], pi: np.ndarray | None = None) -> float:
    """Long-run firing frequency of the selected edges."""
    pi = steady_state(c) if pi is None else pi
    return float(
        sum(pi[s] * r for s, r, t in c.edges if select(Edge(c.labels[s], r, c.labels[t])))
    )


def simulate_occupancy(
    c: Ctmc, jumps: int, seed: int = 0, batches: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Time-weighted occupancy from one long trajectory, with batch-means
    standard errors."""
    rng = np.random.default_rng(seed)
    targets: list[list[int]] = [[] for _ in range(c.n)]
    weights: list[list[float]] = [[] for _ in range(c.n)]
    for s, r, t in c.edges:
        if s != t:
            targets[s].append(t)
            weights[s].append(r)
    totals = [sum(w) for w in weights]
    if not all(totals):
        raise AnalysisError("cannot simulate a chain with absorbing states")
    cums = [list(np.cumsum(w) / sum(w)) for w in weights]
    u = rng.random(jumps).tolist()
    holds = rng.standard_exponential(jumps).tolist()
    per_batch = jumps // batches
    occ = np.zeros((batches, c.n))
    s = c.initial
    for k in range(batches * per_batch):
        occ[k // per_batch, s] += holds[k] / totals[s]
        j = min(bisect_right(cums[s], u[k]), len(cums[s]) - 1)
        s = targets[s][j]
    frac = occ / occ.sum(axis=1, keepdims=True)
    overall = occ.sum(axis=0) / occ.sum()
    se = frac.std(axis=0, ddof=1) / np.sqrt(batches)
    return overall, se
