import pytest
from hypothesis import given, strategies as st

from reoimc.circuit import Channel, Circuit, IoSpec
from reoimc.dsl import DslError, format_circuit, parse, tokenize
from reoimc.primitives import NodeSpec

from conftest import CIRCUITS


@pytest.mark.parametrize("path", sorted(CIRCUITS.glob("*.reo")), ids=lambda p: p.stem)
def test_bundled_circuits_round_trip(path):
    c = parse(path.read_text())
    assert parse(format_circuit(c)) == c
    assert format_circuit(parse(format_circuit(c))) == format_circuit(c)


def test_parse_fields(circuit_text):
    c = parse(circuit_text("router"))
    assert c.name == "Router"
    assert c.nodes[0].family == "merger_router"
    assert c.nodes[0].outputs == ("c", "e")
    assert c.boundary == {"a", "d", "f"}
    assert IoSpec("reader", "f", 1.0) in c.ios


def test_comments_and_positions():
    toks = tokenize("# note\ncircuit X {\n}")
    assert [(t.text, t.line, t.col) for t in toks[:2]] == [("circuit", 2, 1), ("X", 2, 9)]


def diag(text):
    with pytest.raises(DslError) as exc:
        parse(text)
    return exc.value.diagnostics


def test_syntax_error_location():
    d = diag("circuit X {\n  sync(a b) { gamma_ab = 1.0; }\n}")
    assert (d[0].line, d[0].col) == (2, 10)
    assert "expected ','" in d[0].message


def test_unknown_kind_and_bad_rates_are_collected():
    d = diag(
        "circuit X {\n"
        "  spout(a, b) { gamma_ab = 1.0; }\n"
        "  sync(a, b) { gamma_ab = -2; }\n"
        "  lossy(c, d) { gamma_ab = 1.0; }\n"
        "}"
    )
    msgs = [x.message for x in d]
    assert msgs[0] == "unknown channel kind 'spout'"
    assert (d[0].line, d[0].col) == (2, 3)
    assert any("must be positive" in m for m in msgs)
    assert any("missing rate 'gamma_aL'" in m for m in msgs)


def test_semantic_problem_points_at_port():
    d = diag(
        "circuit X {\n"
        "  sync(a, b) { gamma_ab = 1.0; }\n"
        "  node n(b -> zz) { }\n"
        "}"
    )
    assert d[0].message == "dangling node end 'zz'"
    assert (d[0].line, d[0].col) == (3, 15)


def test_other_semantic_problems():
    base = "circuit X {\n  sync(a, b) { gamma_ab = 1.0; }\n%s}"
    cases = {
        "  writer(b) { gamma = 1.0; }\n": "not a source end",
        "  reader(a) { gamma = 1.0; }\n": "not a sink end",
        "  writer(a) { gamma = 1.0; }\n  writer(a) { gamma = 2.0; }\n": "duplicate port role",
        "  sync(b, c) { gamma_ab = 1.0; }\n": "more than one channel end",
        "  writer(a) { gamma = 1.0; rate = 2.0; }\n": "exactly one rate",
        "  node n(a -> b) { family = sorter; }\n": "unknown node family",
    }
    for body, needle in cases.items():
        assert any(needle in x.message for x in diag(base % body)), needle


def test_error_text_has_line_and_column():
    with pytest.raises(DslError, match=r"^1:1: expected 'circuit'"):
        parse("sync(a, b) { }")
    with pytest.raises(DslError, match="unexpected character"):
        parse("circuit X { @ }")


names = st.sampled_from(["a", "b", "c", "d", "e", "f"])
rates = st.floats(0.01, 100, allow_nan=False, allow_infinity=False)


@st.composite
def circuits(draw):
    ports = draw(st.lists(names, min_size=2, max_size=6, unique=True))
    chans = []
    for a, b in zip(ports[::2], ports[1::2]):
        kind = draw(st.sampled_from(["sync", "drain", "lossy", "fifo"]))
        keys = {"sync": ["gamma_ab"], "drain": ["gamma_ab"], "lossy": ["gamma_ab", "gamma_aL"],
                "fifo": ["gamma_aB", "gamma_Bb"]}[kind]
        chans.append(Channel(kind, a, b, {k: draw(rates) for k in keys}))
    nodes = []
    if len(chans) >= 2 and chans[0].kind != "drain" and draw(st.booleans()):
        delayed = draw(st.booleans())
        nodes.append(
            NodeSpec(
                (chans[0].sink,), (chans[1].source,),
                draw(rates) if delayed else None, draw(rates) if delayed else None,
                draw(st.sampled_from(["merger_replicator", "merger_router"])), "n",
            )
        )
    return Circuit("C", chans, nodes)


@given(circuits())
def test_printer_parser_round_trip(c):
    assert parse(format_circuit(c)) == c
