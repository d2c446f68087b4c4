from hypothesis import given, strategies as st

from reoimc.flow import FlowOrder, transitive_closure


def test_closure_and_neighbours():
    f = FlowOrder.from_pairs([("a", "b"), ("b", "c")])
    assert f.lt("a", "c") and not f.lt("a", "c", closure=False)
    assert f.neighbours({"b"}) == {"a", "c"}
    assert f.neighbours({"a"}) == {"b"}
    assert f.neighbours({"a"}, closure=True) == {"b", "c"}


def test_lifted_order():
    f = FlowOrder.from_pairs([("a", "b"), ("a", "c")])
    assert f.set_lt({"a"}, {"b", "c"})
    assert not f.set_lt({"b"}, {"c"})
    # vacuous on an empty right-hand side, never true from an empty left side
    assert f.set_lt({"b"}, set())
    assert not f.set_lt(set(), {"b"})


def test_cycles_saturate():
    f = FlowOrder.from_pairs([("a", "b"), ("b", "a")])
    assert f.lt("a", "a") and f.lt("b", "b")


@given(st.lists(st.tuples(st.sampled_from("abcde"), st.sampled_from("abcde")), max_size=8))
def test_closure_is_transitive(pairs):
    c = transitive_closure(pairs)
    assert set(pairs) <= c
    for x, y in c:
        for y2, z in c:
            if y == y2:
                assert (x, z) in c
