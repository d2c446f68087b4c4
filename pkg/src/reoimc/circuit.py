"""Elaborated connector topology and build plans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .flow import FlowOrder
from .imc import Imc
from .primitives import NodeSpec, make_channel, make_io, make_node


class CircuitError(ValueError):
    """Raised for circuits that violate topology rules."""


@dataclass(frozen=True)
class Channel:
    kind: str
    source: str
    sink: str
    rates: dict[str, float] = field(default_factory=dict, compare=True, hash=False)

    @property
    def source_ends(self) -> tuple[str, ...]:
        # both ends of a drain accept data
        return (self.source, self.sink) if self.kind == "drain" else (self.source,)

    @property
    def sink_ends(self) -> tuple[str, ...]:
        return () if self.kind == "drain" else (self.sink,)

    @property
    def ends(self) -> tuple[str, str]:
        return self.source, self.sink

    def model(self) -> Imc:
        return make_channel(self.kind, self.source, self.sink, **self.rates)


@dataclass(frozen=True)
class IoSpec:
    role: Literal["writer", "reader"]
    port: str
    gamma: float

    def model(self) -> Imc:
        return make_io(self.port, self.gamma)


@dataclass
class Circuit:
    name: str
    channels: list[Channel] = field(default_factory=list)
    nodes: list[NodeSpec] = field(default_factory=list)
    ios: list[IoSpec] = field(default_factory=list)

    @property
    def ends(self) -> frozenset[str]:
        return frozenset(p for ch in self.channels for p in ch.ends)

    @property
    def node_ends(self) -> frozenset[str]:
        return frozenset(p for n in self.nodes for p in n.ends)

    @property
    def boundary(self) -> frozenset[str]:
        return self.ends - self.node_ends

    def problems(self) -> list[str]:
        """Topology violations, empty for a valid circuit."""
        out = []
        owner: dict[str, int] = {}
        for k, ch in enumerate(self.channels):
            for p in ch.ends:
                if p in owner:
                    out.append(
                        f"port '{p}' is used by more than one channel end; "
                        "join channels through a node"
                    )
                owner.setdefault(p, k)
        sources = {p for ch in self.channels for p in ch.source_ends}
        sinks = {p for ch in self.channels for p in ch.sink_ends}
        used: set[str] = set()
        for node in self.nodes:
            for p in node.ends:
                if p not in owner:
                    out.append(f"dangling node end '{p}'")
                elif p in used:
                    out.append(f"port '{p}' is attached to more than one node")
                used.add(p)
            for p in node.inputs:
                if p in owner and p not in sinks:
                    out.append(f"node input '{p}' is not a channel sink end")
            for p in node.outputs:
                if p in owner and p not in sources:
                    out.append(f"node output '{p}' is not a channel source end")
        boundary = self.boundary
        bound: set[str] = set()
        for io in self.ios:
            if io.port in bound:
                out.append(f"duplicate port role for '{io.port}'")
            bound.add(io.port)
            if io.port not in boundary:
                out.append(f"{io.role} bound to non-boundary port '{io.port}'")
            elif io.role == "writer" and io.port not in sources:
                out.append(f"writer bound to '{io.port}', which is not a source end")
            elif io.role == "reader" and io.port not in sinks:
                out.append(f"reader bound to '{io.port}', which is not a sink end")
        return out

    def check(self) -> Circuit:
        problems = self.problems()
        if problems:
            raise CircuitError("; ".join(problems))
        return self


@dataclass
class BuildPlan:
    """Everything the composer needs, in fold order."""

    phase: str
    channels: list[Imc]
    nodes: list[tuple[Imc, frozenset[str]]]
    node_ends: frozenset[str]
    flow: FlowOrder
    env: list[Imc] = field(default_factory=list)
    boundary: frozenset[str] = frozenset()


def derive_flow(circuit: Circuit) -> FlowOrder:
    """Direct flow pairs from the topology: synchronous channels order their
    source before their sink, nodes order each input before each output.
    Drains lose data and fifos decouple their ends, so neither adds a pair."""
    pairs = [
        (ch.source, ch.sink) for ch in circuit.channels if ch.kind in ("sync", "lossy")
    ]
    for node in circuit.nodes:
        pairs.extend((i, o) for i in node.inputs for o in node.outputs)
    return FlowOrder.from_pairs(pairs)


def elaborate_phase(circuit: Circuit, phase: str = "design") -> BuildPlan:
    if phase not in ("design", "deploy"):
        raise ValueError(f"unknown phase {phase!r}")
    circuit.check()
    plan = BuildPlan(
        phase=phase,
        channels=[ch.model() for ch in circuit.channels],
        nodes=[(make_node(n), n.ends) for n in circuit.nodes],
        node_ends=circuit.node_ends,
        flow=derive_flow(circuit),
    )
    if phase == "deploy":
        bound = {io.port for io in circuit.ios}
        unbound = sorted(circuit.boundary - bound)
        if unbound:
            raise CircuitError(f"unbound boundary port '{unbound[0]}'")
        plan.env = [io.model() for io in circuit.ios]
        plan.boundary = circuit.boundary
    return plan
