"""Generators for primitive models.

Distilled channels carry only processing delays; readers and writers supply
request arrivals; nodes come in two parametric families with optional
enqueue/dequeue delays.  The classic generators include arrival rates in the
channel itself and serve as the reference models for deployed connectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .imc import IDLE, Imc, StateLabel

L = StateLabel.of

CHANNEL_KINDS = ("sync", "drain", "lossy", "fifo")
NODE_FAMILIES = ("merger_replicator", "merger_router")

CHANNEL_RATES = {
    "sync": ("gamma_ab",),
    "drain": ("gamma_ab",),
    "lossy": ("gamma_ab", "gamma_aL"),
    "fifo": ("gamma_aB", "gamma_Bb"),
}


def _check_rate(name: str, value) -> float:
    value = float(value)
    if not value > 0 or value == float("inf"):
        raise ValueError(f"rate {name} must be positive and finite, got {value!r}")
    return value


def _rates(kind: str, given: dict, extra: Sequence[str] = ()) -> dict[str, float]:
    if kind not in CHANNEL_RATES:
        raise ValueError(f"unknown channel kind {kind!r}")
    needed = CHANNEL_RATES[kind] + tuple(extra)
    missing = [k for k in needed if k not in given]
    if missing:
        raise ValueError(f"{kind} channel is missing rate {missing[0]!r}")
    unknown = sorted(set(given) - set(needed))
    if unknown:
        raise ValueError(f"{kind} channel does not take rate {unknown[0]!r}")
    return {k: _check_rate(k, given[k]) for k in needed}


def _ends(a: str, b: str) -> None:
    if a == b:
        raise ValueError(f"channel ends must differ, got {a!r} twice")


def make_channel(kind: str, a: str, b: str, **rates: float) -> Imc:
    """Distilled channel model between source end ``a`` and sink end ``b``."""
    g = _rates(kind, rates)
    _ends(a, b)
    if kind in ("sync", "drain"):
        return Imc.build(
            [IDLE, L(t={a, b})],
            [(0, {a, b}, 1)],
            [(1, g["gamma_ab"], 0)],
        )
    if kind == "lossy":
        return Imc.build(
            [IDLE, L(t={a}), L(t={a, b})],
            [(0, {a}, 1), (0, {a, b}, 2)],
            [(1, g["gamma_aL"], 0), (2, g["gamma_ab"], 0)],
        )
    # fifo, initially empty
    return Imc.build(
        [L(q="e"), L(t={a}, q="e"), L(q="f"), L(t={b}, q="f")],
        [(0, {a}, 1), (2, {b}, 3)],
        [(1, g["gamma_aB"], 2), (3, g["gamma_Bb"], 0)],
    )


def make_io(port: str, gamma: float) -> Imc:
    """Reader or writer bound to ``port``: issue a request, then block until it fires."""
    gamma = _check_rate("gamma", gamma)
    return Imc.build([IDLE, L(r={port})], [(1, {port}, 0)], [(0, gamma, 1)])


@dataclass(frozen=True)
class NodeSpec:
    """A mixed node: ``inputs`` are sink ends of incoming channels, ``outputs``
    source ends of outgoing ones.  ``None`` delays mean immediate."""

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gamma_e: float | None = None
    gamma_d: float | None = None
    family: Literal["merger_replicator", "merger_router"] = "merger_replicator"
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.inputs or not self.outputs:
            raise ValueError("a node needs at least one input and one output end")
        both = set(self.inputs) & set(self.outputs)
        if both:
            raise ValueError(f"node ends {sorted(both)} are both input and output")
        if len(set(self.inputs)) != len(self.inputs) or len(set(self.outputs)) != len(
            self.outputs
        ):
            raise ValueError("node ends must be distinct")
        if self.family not in NODE_FAMILIES:
            raise ValueError(f"unknown node family {self.family!r}")
        if (self.gamma_e is None) != (self.gamma_d is None):
            raise ValueError("gamma_e and gamma_d must both be given or both omitted")
        if self.gamma_e is not None:
            _check_rate("gamma_e", self.gamma_e)
            _check_rate("gamma_d", self.gamma_d)

    @property
    def immediate(self) -> bool:
        return self.gamma_e is None

    @property
    def ends(self) -> frozenset[str]:
        return frozenset(self.inputs) | frozenset(self.outputs)


def make_node(spec: NodeSpec) -> Imc:
    ins, outs = spec.inputs, spec.outputs
    if spec.family == "merger_replicator":
        labels = [{i, *outs} for i in ins]
    else:
        labels = [{i, o} for i in ins for o in outs]

    if spec.immediate:
        return Imc.build([IDLE], [(0, x, 0) for x in labels])

    states = [IDLE]
    itrans, mtrans = [], []
    if spec.family == "merger_replicator":
        deq = len(ins) + 1
        for i, x in zip(ins, labels):
            states.append(L(e={i}))
            itrans.append((0, x, len(states) - 1))
            mtrans.append((len(states) - 1, spec.gamma_e, deq))
        states.append(L(d=set(outs)))
        # k sequential dequeues folded into a single exponential step
        mtrans.append((deq, spec.gamma_d / len(outs), 0))
    else:
        deq = {o: 1 + len(ins) * len(outs) + j for j, o in enumerate(outs)}
        for i in ins:
            for o in outs:
                states.append(L(e={i, o}))
                itrans.append((0, {i, o}, len(states) - 1))
                mtrans.append((len(states) - 1, spec.gamma_e, deq[o]))
        for o in outs:
            states.append(L(d={o}))
            mtrans.append((deq[o], spec.gamma_d, 0))
    return Imc.build(states, itrans, mtrans)


def make_classic_channel(kind: str, a: str, b: str, **rates: float) -> Imc:
    """Channel model with request arrivals at its ends built in (rates
    ``gamma_a``/``gamma_b`` besides the processing delays)."""
    g = _rates(kind, rates, extra=("gamma_a", "gamma_b"))
    _ends(a, b)
    ga, gb = g["gamma_a"], g["gamma_b"]
    if kind in ("sync", "drain", "lossy"):
        states = [IDLE, L(r={a}), L(r={b}), L(r={a, b}), L(t={a, b})]
        itrans = [(3, {a, b}, 4)]
        mtrans = [
            (0, ga, 1),
            (0, gb, 2),
            (1, gb, 3),
            (2, ga, 3),
            (4, g["gamma_ab"], 0),
        ]
        if kind == "lossy":
            states.append(L(t={a}))
            itrans.append((1, {a}, 5))
            mtrans.append((5, g["gamma_aL"], 0))
        return Imc.build(states, itrans, mtrans)

    s = {
        key: i
        for i, key in enumerate(
            ["0e", "ae", "be", "abe", "Ae", "bAe", "0f", "af", "bf", "abf", "Bf", "aBf"]
        )
    }
    states = [
        L(q="e"),
        L(r={a}, q="e"),
        L(r={b}, q="e"),
        L(r={a, b}, q="e"),
        L(t={a}, q="e"),
        L(r={b}, t={a}, q="e"),
        L(q="f"),
        L(r={a}, q="f"),
        L(r={b}, q="f"),
        L(r={a, b}, q="f"),
        L(t={b}, q="f"),
        L(r={a}, t={b}, q="f"),
    ]
    itrans = [
        (s["ae"], {a}, s["Ae"]),
        (s["abe"], {a}, s["bAe"]),
        (s["bf"], {b}, s["Bf"]),
        (s["abf"], {b}, s["aBf"]),
    ]
    aB, Bb = g["gamma_aB"], g["gamma_Bb"]
    mtrans = [
        # arrivals at a
        (s["0e"], ga, s["ae"]),
        (s["be"], ga, s["abe"]),
        (s["0f"], ga, s["af"]),
        (s["bf"], ga, s["abf"]),
        (s["Bf"], ga, s["aBf"]),
        # arrivals at b
        (s["0e"], gb, s["be"]),
        (s["ae"], gb, s["abe"]),
        (s["Ae"], gb, s["bAe"]),
        (s["0f"], gb, s["bf"]),
        (s["af"], gb, s["abf"]),
        # buffer fill and drain
        (s["Ae"], aB, s["0f"]),
        (s["bAe"], aB, s["bf"]),
        (s["Bf"], Bb, s["0e"]),
        (s["aBf"], Bb, s["ae"]),
    ]
    return Imc.build(states, itrans, mtrans)
