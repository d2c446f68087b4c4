from reoimc.bisim import are_bisimilar, coarsest_partition, strong_bisim_minimize
from reoimc.imc import IDLE, Imc, StateLabel

L = StateLabel.of


def test_symmetric_branches_collapse():
    # two copies of the same loop reached by different actions' targets
    m = Imc.build(
        [IDLE, L(t="a"), L(t="b")],
        [(0, "a", 1), (0, "a", 2)],
        [(1, 2.0, 0), (2, 2.0, 0)],
    )
    assert coarsest_partition(m) == [0, 1, 1]
    q = strong_bisim_minimize(m)
    assert q.n == 2
    # representative keeps the label of the lowest-numbered member
    assert q.states == (IDLE, L(t="a"))
    assert are_bisimilar(m, q)


def test_cumulative_rates_are_compared():
    # 1 + 2 into one class equals a single 3 into the equivalent class
    m1 = Imc.build([IDLE, IDLE, IDLE], [], [(0, 1.0, 1), (0, 2.0, 2)])
    m2 = Imc.build([IDLE, IDLE], [], [(0, 3.0, 1)])
    assert are_bisimilar(m1, m2)
    m3 = Imc.build([IDLE, IDLE], [], [(0, 3.5, 1)])
    assert not are_bisimilar(m1, m3)


def test_rate_rounding_tolerates_float_noise():
    m1 = Imc.build([IDLE, IDLE, IDLE], [], [(0, 0.1, 1), (0, 0.2, 2)])
    m2 = Imc.build([IDLE, IDLE], [], [(0, 0.3, 1)])
    assert 0.1 + 0.2 != 0.3
    assert are_bisimilar(m1, m2)


def test_action_labels_matter_but_state_labels_do_not():
    a = Imc.build([IDLE, IDLE], [(0, "a", 1)])
    b = Imc.build([L(r="z"), L(t="z")], [(0, "a", 1)])
    c = Imc.build([IDLE, IDLE], [(0, "b", 1)])
    assert are_bisimilar(a, b)
    assert not are_bisimilar(a, c)


def test_no_maximal_progress_cut():
    # a tau move does not pre-empt a rate here
    with_rate = Imc.build([IDLE, IDLE], [(0, (), 1)], [(0, 1.0, 1)])
    without = Imc.build([IDLE, IDLE], [(0, (), 1)])
    assert not are_bisimilar(with_rate, without)
