"""Interactive Markov chain data model.

States are identified by index; each carries a :class:`StateLabel` with the
pending requests (R), transmissions (T), enqueueings (E), dequeueings (D) and
an internal-state tag (Q).  Interactive transitions are labelled with a set of
ports (the empty set is tau); Markovian transitions carry a positive rate.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

EMPTY: frozenset[str] = frozenset()


def _fmt(ports: Iterable[str]) -> str:
    return ",".join(sorted(ports))


@dataclass(frozen=True)
class StateLabel:
    r: frozenset[str] = EMPTY
    t: frozenset[str] = EMPTY
    e: frozenset[str] = EMPTY
    d: frozenset[str] = EMPTY
    q: str = ""

    @classmethod
    def of(cls, r=(), t=(), e=(), d=(), q: str = "") -> StateLabel:
        return cls(frozenset(r), frozenset(t), frozenset(e), frozenset(d), q)

    @property
    def ports(self) -> frozenset[str]:
        return self.r | self.t | self.e | self.d

    @property
    def activity(self) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
        return self.t, self.e, self.d

    def sort_key(self) -> tuple:
        return (
            tuple(sorted(self.r)),
            tuple(sorted(self.t)),
            tuple(sorted(self.e)),
            tuple(sorted(self.d)),
            self.q,
        )

    def merge(self, other: StateLabel) -> StateLabel:
        """Componentwise union; internal tags are joined in sorted order."""
        tags = sorted(x for x in (self.q, other.q) if x)
        return StateLabel(
            self.r | other.r,
            self.t | other.t,
            self.e | other.e,
            self.d | other.d,
            ",".join(tags),
        )

    def __str__(self) -> str:
        parts = []
        if self.r:
            parts.append(f"[{_fmt(self.r)}]")
        if self.t:
            parts.append(f"{{{_fmt(self.t)}}}")
        if self.e:
            parts.append(f"enq<{_fmt(self.e)}>")
        if self.d:
            parts.append(f"deq<{_fmt(self.d)}>")
        text = "".join(parts) or "∅"
        return f"{text}_{self.q}" if self.q else text


IDLE = StateLabel()


def label_str(ports: Iterable[str]) -> str:
    """Compact action label: ``ab`` for single-letter ports, else ``a1,b2``."""
    ports = sorted(ports)
    if not ports:
        return "tau"
    if all(len(p) == 1 for p in ports):
        return "".join(ports)
    return ",".join(ports)


@dataclass(frozen=True)
class Imc:
    """An interactive Markov chain.

    The constructor stores its arguments verbatim so that malformed models can
    be represented (and reported by :func:`validate`).  Use :meth:`build` for
    normal construction: it sorts and deduplicates transitions and sums
    parallel Markovian edges.
    """

    states: tuple[StateLabel, ...]
    alphabet: frozenset[str]
    itrans: tuple[tuple[int, frozenset[str], int], ...]
    mtrans: tuple[tuple[int, float, int], ...]
    initial: int = 0

    @classmethod
    def build(
        cls,
        states: Iterable[StateLabel],
        itrans: Iterable[tuple[int, Iterable[str], int]] = (),
        mtrans: Iterable[tuple[int, float, int]] = (),
        initial: int = 0,
        alphabet: Iterable[str] | None = None,
    ) -> Imc:
        states = tuple(states)
        inter = {(s, frozenset(x), t) for s, x, t in itrans}
        rates: dict[tuple[int, int], float] = {}
        for s, rate, t in mtrans:
            rates[s, t] = rates.get((s, t), 0.0) + rate
        if alphabet is None:
            alpha: set[str] = set()
            for lab in states:
                alpha |= lab.ports
            for _, x, _ in inter:
                alpha |= x
        else:
            alpha = set(alphabet)
        return cls(
            states=states,
            alphabet=frozenset(alpha),
            itrans=tuple(sorted(inter, key=_itrans_key)),
            mtrans=tuple(sorted(((s, r, t) for (s, t), r in rates.items()))),
            initial=initial,
        )

    @property
    def n(self) -> int:
        return len(self.states)

    @cached_property
    def out_inter(self) -> dict[int, list[tuple[frozenset[str], int]]]:
        out = defaultdict(list)
        for s, x, t in self.itrans:
            out[s].append((x, t))
        return out

    @cached_property
    def out_markov(self) -> dict[int, list[tuple[float, int]]]:
        out = defaultdict(list)
        for s, r, t in self.mtrans:
            out[s].append((r, t))
        return out

    def successors(self, s: int) -> Iterable[int]:
        for _, t in self.out_inter.get(s, ()):
            yield t
        for _, t in self.out_markov.get(s, ()):
            yield t

    def replace(self, **changes) -> Imc:
        """Rebuild with some fields replaced (normalising transitions)."""
        fields = dict(
            states=self.states,
            itrans=self.itrans,
            mtrans=self.mtrans,
            initial=self.initial,
            alphabet=self.alphabet,
        )
        fields.update(changes)
        return Imc.build(**fields)

    def __str__(self) -> str:
        lines = [f"IMC with {self.n} states, initial {self.states[self.initial]}"]
        for s, x, t in self.itrans:
            lines.append(f"  {self.states[s]} --{label_str(x)}--> {self.states[t]}")
        for s, r, t in self.mtrans:
            lines.append(f"  {self.states[s]} ~~{r:g}~~> {self.states[t]}")
        return "\n".join(lines)


def _itrans_key(tr):
    s, x, t = tr
    return (s, tuple(sorted(x)), t)


def single_state(label: StateLabel = IDLE) -> Imc:
    """The one-state model without transitions (unit of parallel composition)."""
    return Imc.build([label])


def validate(m: Imc) -> list[str]:
    """Return every violated well-formedness condition; empty when valid."""
    report = []
    n = len(m.states)
    if n == 0:
        report.append("empty state set")
    if not 0 <= m.initial < n:
        report.append(f"dangling initial state {m.initial}")
    seen = set()
    for s, x, t in m.itrans:
        if not (0 <= s < n and 0 <= t < n):
            report.append(f"dangling interactive transition {s}->{t}")
        key = (s, frozenset(x), t)
        if key in seen:
            report.append(f"duplicate interactive transition {s}-{label_str(x)}->{t}")
        seen.add(key)
        stray = set(x) - m.alphabet
        if stray:
            report.append(f"action ports {sorted(stray)} not in alphabet")
    pairs = set()
    for s, r, t in m.mtrans:
        if not (0 <= s < n and 0 <= t < n):
            report.append(f"dangling Markovian transition {s}->{t}")
        if not (isinstance(r, (int, float)) and math.isfinite(r)):
            report.append(f"non-finite rate {r!r} on {s}->{t}")
        elif r <= 0:
            report.append(f"non-positive rate {r!r} on {s}->{t}")
        if (s, t) in pairs:
            report.append(f"duplicate Markovian edge {s}->{t}")
        pairs.add((s, t))
    for i, lab in enumerate(m.states):
        stray = lab.ports - m.alphabet
        if stray:
            report.append(f"state {i} mentions ports {sorted(stray)} not in alphabet")
    return report


def reachable_set(m: Imc, start: int | None = None) -> list[int]:
    start = m.initial if start is None else start
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in m.successors(s):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def restrict(m: Imc, keep: Iterable[int]) -> Imc:
    """Sub-model induced by ``keep`` (which must contain the initial state)."""
    keep = sorted(set(keep))
    index = {old: new for new, old in enumerate(keep)}
    return Imc(
        states=tuple(m.states[i] for i in keep),
        alphabet=m.alphabet,
        itrans=tuple(
            (index[s], x, index[t]) for s, x, t in m.itrans if s in index and t in index
        ),
        mtrans=tuple(
            (index[s], r, index[t]) for s, r, t in m.mtrans if s in index and t in index
        ),
        initial=index[m.initial],
    )


def reachable(m: Imc) -> Imc:
    """Drop states not reachable from the initial state."""
    keep = reachable_set(m)
    if len(keep) == m.n:
        return m
    return restrict(m, keep)


def hide(m: Imc, ports: Iterable[str]) -> Imc:
    ports = frozenset(ports)
    if not ports:
        return m
    return Imc.build(
        m.states,
        ((s, x - ports, t) for s, x, t in m.itrans),
        m.mtrans,
        m.initial,
        alphabet=m.alphabet - ports,
    )


def rename(m: Imc, mapping: Mapping[str, str]) -> Imc:
    """Rename ports everywhere (states, labels, alphabet)."""

    def f(ports):
        return frozenset(mapping.get(p, p) for p in ports)

    states = [
        StateLabel(f(l.r), f(l.t), f(l.e), f(l.d), l.q) for l in m.states
    ]
    return Imc.build(
        states,
        ((s, f(x), t) for s, x, t in m.itrans),
        m.mtrans,
        m.initial,
        alphabet=f(m.alphabet),
    )


@dataclass(frozen=True)
class Stats:
    states: int
    interactive: int
    markovian: int
    alphabet: int
    reachable: int

    def __str__(self) -> str:
        return (
            f"states={self.states} interactive={self.interactive} "
            f"markovian={self.markovian} alphabet={self.alphabet} "
            f"reachable={self.reachable}"
        )


def stats(m: Imc) -> Stats:
    return Stats(
        states=m.n,
        interactive=len(m.itrans),
        markovian=len(m.mtrans),
        alphabet=len(m.alphabet),
        reachable=len(reachable_set(m)),
    )


def _as_graph(m: Imc, *, with_labels: bool) -> nx.DiGraph:
    g = nx.DiGraph()
    for i, lab in enumerate(m.states):
        g.add_node(i, label=lab if with_labels else None, initial=i == m.initial)
    edges: dict[tuple[int, int], set] = defaultdict(set)
    for s, x, t in m.itrans:
        edges[s, t].add(("i", x))
    for s, r, t in m.mtrans:
        edges[s, t].add(("m", r))
    for (s, t), lab in edges.items():
        g.add_edge(s, t, trans=frozenset(lab))
    return g


def find_isomorphism(
    m1: Imc, m2: Imc, *, with_labels: bool = True
) -> dict[int, int] | None:
    """State bijection m1 -> m2 preserving labels, transitions, exact rates and
    the initial state, or None."""
    if (m1.n, len(m1.itrans), len(m1.mtrans)) != (m2.n, len(m2.itrans), len(m2.mtrans)):
        return None
    g1 = _as_graph(m1, with_labels=with_labels)
    g2 = _as_graph(m2, with_labels=with_labels)
    matcher = DiGraphMatcher(
        g1,
        g2,
        node_match=lambda a, b: a["label"] == b["label"] and a["initial"] == b["initial"],
        edge_match=lambda a, b: a["trans"] == b["trans"],
    )
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


def is_isomorphic(m1: Imc, m2: Imc, *, with_labels: bool = True) -> bool:
    return find_isomorphism(m1, m2, with_labels=with_labels) is not None
