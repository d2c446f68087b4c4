"""Data-flow order between ports, ``a < b`` when data flows from a to b."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closed = set()
    for start in list(succ):
        stack = list(succ[start])
        seen = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            closed.add((start, x))
            stack.extend(succ.get(x, ()))
    return frozenset(closed)


@dataclass(frozen=True)
class FlowOrder:
    direct: frozenset[tuple[str, str]]
    closed: frozenset[tuple[str, str]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> FlowOrder:
        direct = frozenset((a, b) for a, b in pairs if a != b)
        return cls(direct, transitive_closure(direct))

    @classmethod
    def empty(cls) -> FlowOrder:
        return cls(frozenset(), frozenset())

    def rel(self, closure: bool) -> frozenset[tuple[str, str]]:
        return self.closed if closure else self.direct

    def lt(self, a: str, b: str, closure: bool = True) -> bool:
        return (a, b) in self.rel(closure)

    def set_lt(self, xs, ys, closure: bool = True) -> bool:
        """Lifted order: some x in ``xs`` precedes every y in ``ys``."""
        rel = self.rel(closure)
        return any(all((x, y) in rel for y in ys) for x in xs)

    def neighbours(self, ports, closure: bool = False) -> frozenset[str]:
        """Ports ordered before or after some port in ``ports``."""
        ports = set(ports)
        out = set()
        for a, b in self.rel(closure):
            if b in ports:
                out.add(a)
            if a in ports:
                out.add(b)
        return frozenset(out)
