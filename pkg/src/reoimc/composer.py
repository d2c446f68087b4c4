"""Composition pipeline: product, synchronisation, clean-up and deployment."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .circuit import BuildPlan, Circuit, CircuitError, derive_flow, elaborate_phase
from .flow import FlowOrder
from .imc import Imc, StateLabel, hide, reachable, single_state

__all__ = [
    "CleanupOptions",
    "cleanup",
    "compose_circuit",
    "compose_stages",
    "deploy",
    "deploy_circuit",
    "derive_flow",
    "parallel",
    "synchronize",
]


def parallel(left: Imc, right: Imc, sync: Iterable[str] = ()) -> Imc:
    """Product of two models, synchronising on the ports in ``sync``.

    A joint interactive move needs both labels non-empty, shared ports inside
    ``sync``, and agreement on which ``sync`` ports of the other side's
    alphabet take part.  Markovian moves always interleave.
    """
    sync = frozenset(sync)
    nr = right.n

    def idx(i, j):
        return i * nr + j

    states = [a.merge(b) for a in left.states for b in right.states]
    itrans = []
    for i1, x, i2 in left.itrans:
        if not x & sync:
            itrans.extend((idx(i1, j), x, idx(i2, j)) for j in range(nr))
    for j1, y, j2 in right.itrans:
        if not y & sync:
            itrans.extend((idx(i, j1), y, idx(i, j2)) for i in range(left.n))

    # joint moves, grouped by the sync ports each side commits to
    by_commit: dict[frozenset[str], list] = {}
    for j1, y, j2 in right.itrans:
        if y:
            by_commit.setdefault(y & sync & left.alphabet, []).append((j1, y, j2))
    for i1, x, i2 in left.itrans:
        if not x:
            continue
        for j1, y, j2 in by_commit.get(x & sync & right.alphabet, ()):
            if (x & y) <= sync:
                itrans.append((idx(i1, j1), x | y, idx(i2, j2)))

    mtrans = [(idx(i1, j), r, idx(i2, j)) for i1, r, i2 in left.mtrans for j in range(nr)]
    mtrans += [(idx(i, j1), r, idx(i, j2)) for j1, r, j2 in right.mtrans for i in range(left.n)]
    return Imc.build(
        states,
        itrans,
        mtrans,
        idx(left.initial, right.initial),
        alphabet=left.alphabet | right.alphabet,
    )


def synchronize(m: Imc, ports: Iterable[str], erase_labels: bool = True) -> Imc:
    """Synchronisation over ``ports``.

    Interactive moves out of states engaged on ``ports`` (a pending request,
    transmission, enqueueing or dequeueing there) are dropped, as are
    Markovian moves into states with a pending request on ``ports``; the
    surviving states forget requests on ``ports``.  With ``erase_labels`` the
    ports are also removed from action labels and from the alphabet.
    """
    ports = frozenset(ports)
    if not ports:
        return m
    st = m.states
    itrans = [
        (s, x - ports if erase_labels else x, t)
        for s, x, t in m.itrans
        if not st[s].ports & ports
    ]
    mtrans = [(s, r, t) for s, r, t in m.mtrans if not st[t].r & ports]
    states = [StateLabel(l.r - ports, l.t, l.e, l.d, l.q) for l in st]
    return Imc.build(
        states,
        itrans,
        mtrans,
        m.initial,
        alphabet=m.alphabet - ports if erase_labels else m.alphabet,
    )


@dataclass(frozen=True)
class CleanupOptions:
    """Which flow relation each clean-up condition consults.

    ``an_closure`` selects the transitive closure for the neighbourhood of
    transmitting ports (condition on arrivals); ``order_closure`` selects it
    for the lifted ordering of transmissions and enqueueings.
    """

    an_closure: bool = False
    order_closure: bool = True

    @classmethod
    def from_env(cls) -> CleanupOptions:
        value = os.environ.get("REOIMC_AN_CLOSURE", "direct").strip().lower()
        if value not in ("direct", "closed"):
            raise ValueError(f"REOIMC_AN_CLOSURE must be 'direct' or 'closed', got {value!r}")
        return cls(an_closure=value == "closed")


def _markov_ok(i: StateLabel, f: StateLabel, flow: FlowOrder, opts: CleanupOptions) -> bool:
    near = i.t | flow.neighbours(i.t, closure=opts.an_closure)
    if f.r & near:
        return False
    if not (i.t or i.e or i.d) or i.activity == f.activity:
        # idle sources and pure request arrivals are not ordered
        return True
    c = opts.order_closure
    if flow.set_lt(i.e, i.t, c) or i.t & i.d:
        return i.t == f.t
    done = i.t - f.t
    if flow.set_lt(done, f.t, c):
        return True
    # transmissions on independent branches may finish in any order
    rel = flow.rel(c)
    return bool(done) and not any((x, y) in rel or (y, x) in rel for x in done for y in f.t)


def cleanup(
    m: Imc,
    ports: Iterable[str],
    flow: FlowOrder,
    options: CleanupOptions | None = None,
) -> Imc:
    """Remove transitions that break the enqueue/transmit/dequeue ordering.

    Markovian moves must not raise requests next to an ongoing transmission
    and must retire transmissions in flow order (or keep them while the node
    still holds data).  Interactive moves prefer, for the same label, the
    variant that puts ``ports`` into transmission, and a move is pre-empted
    by a larger one serving more pending requests on ``ports``.
    """
    opts = options or CleanupOptions()
    ports = frozenset(ports)
    st = m.states
    mtrans = [(s, r, t) for s, r, t in m.mtrans if _markov_ok(st[s], st[t], flow, opts)]

    itrans = []
    for s, moves in m.out_inter.items():
        pending = st[s].r & ports
        for x, k in moves:
            if not st[k].t & ports and any(
                y == x and st[l].t & ports for y, l in moves
            ):
                continue
            if pending and any(x < y and (y - x) & pending for y, _ in moves):
                continue
            itrans.append((s, x, k))
    return Imc.build(st, itrans, mtrans, m.initial, alphabet=m.alphabet)


def compose_stages(plan: BuildPlan, options: CleanupOptions | None = None) -> dict[str, Imc]:
    """Design-phase pipeline with every intermediate model."""
    models = plan.channels or [single_state()]
    product = reduce(lambda acc, ch: parallel(acc, ch), models[1:], models[0])
    for node, ends in plan.nodes:
        product = parallel(product, node, ends)
    synced = synchronize(product, plan.node_ends, erase_labels=True)
    cleaned = cleanup(synced, plan.node_ends, plan.flow, options)
    return {
        "product": product,
        "synchronized": synced,
        "cleaned": cleaned,
        "final": reachable(cleaned),
    }


def compose_circuit(circuit: Circuit | BuildPlan, options: CleanupOptions | None = None) -> Imc:
    """Design-phase model of a circuit."""
    plan = circuit if isinstance(circuit, BuildPlan) else elaborate_phase(circuit, "design")
    return compose_stages(plan, options)["final"]


def environment(env: Sequence[Imc]) -> Imc:
    """Interleaved product of readers and writers."""
    return reduce(lambda acc, e: parallel(acc, e), env, single_state())


def deploy(
    design: Imc,
    env: Sequence[Imc],
    ports: Iterable[str],
    erase_labels: bool = False,
    flow: FlowOrder | None = None,
    options: CleanupOptions | None = None,
) -> Imc:
    """Bind readers/writers ``env`` to the boundary ``ports`` of a design model.

    The product synchronises on ``ports`` and is cleaned with the circuit's
    flow order; boundary actions are hidden afterwards when ``erase_labels``.
    """
    ports = frozenset(ports)
    for p in sorted(ports):
        owners = sum(1 for e in env if p in e.alphabet)
        if owners == 0:
            raise CircuitError(f"missing IO binding for port '{p}'")
        if owners > 1:
            raise CircuitError(f"duplicate IO binding for port '{p}'")
    for e in env:
        stray = e.alphabet - ports
        if stray:
            raise CircuitError(f"IO component bound to unexpected port(s) {sorted(stray)}")
    product = parallel(design, environment(env), ports)
    model = reachable(cleanup(product, ports, flow or FlowOrder.empty(), options))
    return hide(model, ports) if erase_labels else model


def deploy_circuit(
    circuit: Circuit, erase_labels: bool = False, options: CleanupOptions | None = None
) -> Imc:
    plan = elaborate_phase(circuit, "deploy")
    design = compose_circuit(plan, options)
    return deploy(design, plan.env, plan.boundary, erase_labels, plan.flow, options)
