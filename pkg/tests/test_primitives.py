import pytest

from diagrams import (
    classic_fifo, classic_lossy, classic_sync, distilled_fifo, distilled_lossy,
    distilled_sync, reader_writer, replicator_node, router_node,
)
from reoimc.imc import is_isomorphic, stats, validate
from reoimc.primitives import NodeSpec, make_channel, make_classic_channel, make_io, make_node


def test_drain_has_sync_shape():
    assert is_isomorphic(make_channel("drain", "a", "b", gamma_ab=2.0), distilled_sync(2.0))


@pytest.mark.parametrize(
    "kind,rates",
    [
        ("sync", {"gamma_ab": 1.0}),
        ("lossy", {"gamma_ab": 1.0, "gamma_aL": 1.0}),
        ("fifo", {"gamma_aB": 1.0, "gamma_Bb": 1.0}),
    ],
)
def test_generated_models_are_well_formed(kind, rates):
    assert validate(make_channel(kind, "x", "y", **rates)) == []
    assert validate(make_classic_channel(kind, "x", "y", gamma_a=1.0, gamma_b=2.0, **rates)) == []


def test_distilled_channels_match_diagrams():
    assert is_isomorphic(make_channel("sync", "a", "b", gamma_ab=1.5), distilled_sync(1.5))
    assert is_isomorphic(
        make_channel("lossy", "a", "b", gamma_ab=1.5, gamma_aL=0.25), distilled_lossy(1.5, 0.25)
    )
    assert is_isomorphic(
        make_channel("fifo", "a", "b", gamma_aB=3.0, gamma_Bb=4.0), distilled_fifo(3.0, 4.0)
    )
    # rates are not interchangeable
    assert not is_isomorphic(
        make_channel("fifo", "a", "b", gamma_aB=3.0, gamma_Bb=4.0), distilled_fifo(4.0, 3.0)
    )


def test_classic_channels_match_diagrams():
    g = dict(gamma_a=1.0, gamma_b=2.0)
    assert is_isomorphic(make_classic_channel("sync", "a", "b", gamma_ab=3.0, **g), classic_sync(1, 2, 3))
    assert is_isomorphic(
        make_classic_channel("lossy", "a", "b", gamma_ab=3.0, gamma_aL=0.5, **g),
        classic_lossy(1, 2, 3, 0.5),
    )
    fifo = make_classic_channel("fifo", "a", "b", gamma_aB=3.0, gamma_Bb=4.0, **g)
    assert is_isomorphic(fifo, classic_fifo(1, 2, 3, 4))
    s = stats(fifo)
    assert (s.states, s.interactive, s.markovian) == (12, 4, 14)


def test_io_component():
    assert is_isomorphic(make_io("a", 2.0), reader_writer("a", 2.0))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (3, 2), (2, 3)])
def test_node_families(n, k):
    ins = tuple(f"i{j}" for j in range(n))
    outs = tuple(f"o{j}" for j in range(k))
    rep = make_node(NodeSpec(ins, outs, 2.0, 3.0))
    assert is_isomorphic(rep, replicator_node(ins, outs, 2.0, 3.0))
    rout = make_node(NodeSpec(ins, outs, 2.0, 3.0, family="merger_router"))
    assert is_isomorphic(rout, router_node(ins, outs, 2.0, 3.0))
    # dequeue rate of the replicator is the per-output rate over k
    assert rep.mtrans[-1][1] == 3.0 / k


def test_immediate_nodes_have_one_state():
    rep = make_node(NodeSpec(("a", "b"), ("c", "d")))
    rout = make_node(NodeSpec(("a", "b"), ("c", "d"), family="merger_router"))
    assert (rep.n, len(rep.itrans)) == (1, 2)
    assert (rout.n, len(rout.itrans)) == (1, 4)


@pytest.mark.parametrize(
    "call,message",
    [
        (lambda: make_channel("sync", "a", "a", gamma_ab=1.0), "ends must differ"),
        (lambda: make_channel("sync", "a", "b"), "missing rate"),
        (lambda: make_channel("sync", "a", "b", gamma_ab=0.0), "positive"),
        (lambda: make_channel("sync", "a", "b", gamma_ab=1.0, gamma_x=1.0), "does not take"),
        (lambda: make_channel("spout", "a", "b"), "unknown channel kind"),
        (lambda: make_io("a", -1.0), "positive"),
        (lambda: NodeSpec((), ("b",)), "at least one"),
        (lambda: NodeSpec(("a",), ("a",)), "both input and output"),
        (lambda: NodeSpec(("a",), ("b",), 1.0, None), "both be given"),
        (lambda: NodeSpec(("a",), ("b",), family="sorter"), "unknown node family"),
    ],
)
def test_invalid_parameters(call, message):
    with pytest.raises(ValueError, match=message):
        call()
