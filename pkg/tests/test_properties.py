"""Algebraic laws checked on random models with at most eight states."""

from hypothesis import given, settings, strategies as st

from conftest import PORTS, flows, imcs
from reoimc.bisim import are_bisimilar, strong_bisim_minimize
from reoimc.composer import cleanup, parallel, synchronize
from reoimc.imc import hide, is_isomorphic

suite = settings(max_examples=1000, deadline=None)
port_subsets = st.frozensets(st.sampled_from(PORTS))


@suite
@given(imcs())
def test_quotient_is_bisimilar(m):
    assert are_bisimilar(m, strong_bisim_minimize(m))


@suite
@given(imcs())
def test_minimize_is_idempotent(m):
    q = strong_bisim_minimize(m)
    assert is_isomorphic(strong_bisim_minimize(q), q)


@suite
@given(imcs(max_states=4), imcs(max_states=2), port_subsets)
def test_product_commutes(m1, m2, sync):
    assert is_isomorphic(parallel(m1, m2, sync), parallel(m2, m1, sync))


@suite
@given(imcs(), st.booleans())
def test_synchronize_on_nothing(m, erase):
    assert synchronize(m, frozenset(), erase_labels=erase) == m


@suite
@given(imcs(), port_subsets, flows())
def test_cleanup_is_idempotent(m, ports, flow):
    once = cleanup(m, ports, flow)
    assert cleanup(once, ports, flow) == once


@suite
@given(imcs(), port_subsets, port_subsets)
def test_hiding_composes(m, a, b):
    assert hide(hide(m, a), b) == hide(m, a | b)
