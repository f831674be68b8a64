import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linelab.classic import (
    CENTER,
    ClassicList,
    MoveCenter,
    inversion_bits,
    mtf_serve,
    mtf_trace,
    optimal_list_update,
    random_trace,
    star_sequence,
)
from linelab.core import NeverSwap, UsageError, count_inversions, run


def test_mtf_access_third_element():
    lst = ClassicList([0, 1, 2])
    assert mtf_serve(lst, 2) == 4
    assert lst.order == [2, 0, 1]


def test_mtf_front_access_is_free():
    lst = ClassicList.identity(4)
    assert mtf_serve(lst, 0) == 0
    assert mtf_serve(lst, 3) == 6
    assert mtf_serve(lst, 3) == 0


def test_mtf_unknown_element():
    with pytest.raises(UsageError):
        mtf_serve(ClassicList.identity(2), 5)


@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.integers(0, n - 1))))
def test_mtf_cost_is_twice_depth(case):
    order, x = case
    lst = ClassicList(list(order))
    d = order.index(x)
    assert mtf_serve(lst, x) == 2 * d
    assert lst.order[0] == x


def test_inversion_bits_against_itself():
    tau = [3, 1, 3, 2, 0]
    states, _ = mtf_trace([0, 1, 2, 3], tau)
    bits = inversion_bits(states, states, 1, 3)
    assert len(bits.bits) == 10
    assert bits.bits[0::2] == (0,) * 5
    # a_i flags exactly the accesses on which MTF flips 1 and 3
    flips = tuple(int((s.index(1) < s.index(3)) != (t.index(1) < t.index(3))) for s, t in zip(states, states[1:]))
    assert bits.bits[1::2] == flips == (1, 1, 1, 0, 0)


def test_inversion_bits_zero_for_pair_never_flipped():
    states, _ = mtf_trace([0, 1, 2, 3], [0, 0, 1])
    assert set(inversion_bits(states, states, 2, 3).bits) == {0}


def test_inversion_bits_against_static_list():
    mtf, _ = mtf_trace([0, 1], [1])
    static = [(0, 1), (0, 1)]
    bits = inversion_bits(mtf, static, 0, 1)
    assert str(bits) == "01"
    assert bits.checked == (1,) and bits.observation_holds


def test_inversion_bits_length_mismatch():
    with pytest.raises(UsageError):
        inversion_bits([(0, 1)], [(0, 1), (1, 0)], 0, 1)


@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_observation_holds_on_random_traces(n, rng):
    initial = list(range(n))
    tau = [rng.randrange(n) for _ in range(rng.randint(1, 12))]
    mtf, _ = mtf_trace(initial, tau)
    other = random_trace(initial, tau, rng)
    for u, v in itertools.combinations(range(n), 2):
        bits = inversion_bits(mtf, other, u, v)
        assert len(bits.bits) == 2 * len(tau)
        assert bits.observation_holds


def test_opt_examples():
    assert optimal_list_update(3, [0] * 5) == 0
    # either access b at depth 1, or swap it forward first: both cost 1
    assert optimal_list_update(2, [1]) == 1
    assert optimal_list_update(2, [1, 1, 1]) == 2


def test_opt_size_guard():
    with pytest.raises(UsageError):
        optimal_list_update(6, [0])
    with pytest.raises(UsageError):
        optimal_list_update(3, [0] * 9)


def _brute_opt(n, tau, initial):
    # every sequence of list orders, one per access, charged depth + inversions
    orders = list(itertools.permutations(range(n)))
    best = None
    for seq in itertools.product(orders, repeat=len(tau)):
        cur, cost = tuple(initial), 0
        for x, nxt in zip(tau, seq):
            rank = {v: i for i, v in enumerate(nxt)}
            cost += cur.index(x) + count_inversions([rank[v] for v in cur])
            cur = nxt
        best = cost if best is None or cost < best else best
    return best


def test_opt_matches_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 3)
        initial = rng.sample(range(n), n)
        tau = [rng.randrange(n) for _ in range(rng.randint(1, 3))]
        assert optimal_list_update(n, tau, initial) == _brute_opt(n, tau, initial)


@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_mtf_within_four_of_opt(n, rng):
    initial = rng.sample(range(n), n)
    tau = [rng.randrange(n) for _ in range(rng.randint(1, 6))]
    _, cost = mtf_trace(initial, tau)
    assert cost <= 4 * optimal_list_update(n, tau, initial)


def test_star_sequence():
    assert star_sequence(3, 4) == [(0, 1), (0, 2), (0, 1), (0, 2)]
    assert star_sequence(5, 0) == []
    with pytest.raises(UsageError):
        star_sequence(1, 3)


def test_move_center_is_constant_per_request():
    n = 64
    sigma = star_sequence(n, 10 * n)
    mover, static = MoveCenter(n), NeverSwap(n)
    run(mover, sigma)
    run(static, sigma)
    assert mover.ledger.total <= 3 * len(sigma)
    assert static.ledger.total >= n / 4 * len(sigma)
    assert mover.config.position(CENTER) > 1
