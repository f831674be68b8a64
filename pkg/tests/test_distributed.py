import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linelab.core import Configuration, NonlinearDemandError
from linelab.distributed import (
    MESSAGE_HEADER,
    DistributedGread,
    EventLoop,
    Kind,
    Message,
    run_distributed_gread,
)
from linelab.gread import Gread
from linelab.workloads import random_line_demand


@st.composite
def line_instances(draw, max_n=40):
    n = draw(st.integers(2, max_n))
    rng = random.Random(draw(st.integers(0, 2**32)))
    start = Configuration.random(n, rng) if draw(st.booleans()) else Configuration.identity(n)
    return n, start, random_line_demand(n, draw(st.integers(1, 5 * n)), rng), draw(st.integers(0, 99))


def test_adjacent_singletons():
    sim = DistributedGread(6)
    sim.request(2, 3)
    assert sim.ledger.migration == 0
    assert sim.first_routes == [(1, 2)]
    # two probe hops, one reply hop, no size or follow-up traffic
    assert sim.ledger.messages == 3
    sim.check_quiescent()


def test_adjacent_found_on_first_probe():
    sim = DistributedGread(6)
    sim.request(3, 2)
    assert sim.first_routes == [(1, 1)]


def test_route_at_distance_five():
    sim = DistributedGread(12)
    hops, direction = sim.route_first(3, 8)
    # left probes die at the line end after 1, 2, 3, 3 hops; right probes 1, 2, 4, then 5
    assert direction == 1
    assert hops == (1 + 2 + 3) + (1 + 2 + 4) + 3 + 5
    assert hops <= 12 * 5


def test_repeat_request_is_one_hop():
    sim = DistributedGread(10)
    sim.request(1, 7)
    m0 = sim.ledger.messages
    sim.request(7, 1)
    assert sim.ledger.messages - m0 == 1
    assert sim.repeat_routes == [1]


def test_singleton_moves_next_to_long_list():
    sim = DistributedGread(10)
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        sim.request(a, b)
    s0 = sim.ledger.migration
    g = sim.config.distance(3, 9)
    sim.request(3, 9)
    assert sim.ledger.migration - s0 == g - 1
    sim.check_quiescent()


def test_single_request_costs():
    sim = DistributedGread(8)
    sim.request(0, 7)
    (dist, hops), = sim.first_routes
    assert dist == 7
    # route, reply, then one swap request per swap
    assert sim.ledger.messages == hops + dist + sim.ledger.migration
    assert sim.ledger.serving == 1


def test_merge_protocol_reports_its_costs():
    sim = DistributedGread(8)
    sim.route_first(0, 5)
    swaps, messages = sim.merge_protocol(0, 5)
    assert swaps == 4 and messages == 5 + swaps


def test_nonlinear_rejected():
    sim = DistributedGread(5)
    sim.request(0, 1)
    sim.request(1, 2)
    with pytest.raises(NonlinearDemandError):
        sim.request(1, 3)


@given(line_instances())
def test_matches_centralized_gread(case):
    n, start, sigma, seed = case
    central = Gread(n, start)
    for u, v in sigma:
        central.request(u, v)
    sim = run_distributed_gread(n, sigma, seed=seed, config=start)
    assert sim.config == central.config
    assert sim.ledger.migration == central.ledger.migration
    assert sim.ledger.serving == central.ledger.serving
    assert all(h <= 12 * d for d, h in sim.first_routes)
    assert all(h == 1 for h in sim.repeat_routes)


@given(line_instances(max_n=24))
def test_local_state_sound_after_every_request(case):
    n, start, sigma, seed = case
    sim = DistributedGread(n, start, seed=seed)
    for u, v in sigma:
        sim.request(u, v)
        sim.check_quiescent()


def test_message_cost_fit():
    # empirical fit: messages <= 1 * (serving + swaps) + 8 * sum of first-route distances
    rng = random.Random(2024)
    for _ in range(60):
        n = rng.randint(2, 64)
        sigma = random_line_demand(n, rng.randint(1, 10 * n), rng)
        sim = run_distributed_gread(n, sigma, config=Configuration.random(n, rng))
        central = sim.ledger.serving + sim.ledger.migration
        assert sim.ledger.messages <= central + 8 * sum(d for d, _ in sim.first_routes)


def test_same_seed_same_trace():
    rng = random.Random(8)
    sigma = random_line_demand(20, 80, rng)
    a = run_distributed_gread(20, sigma, seed=5, record=True)
    b = run_distributed_gread(20, sigma, seed=5, record=True)
    assert a.loop.trace == b.loop.trace and a.ledger == b.ledger
    assert len(a.loop.trace) == a.ledger.messages
    buf = io.StringIO()
    a.loop.write_trace(buf)
    assert buf.getvalue().splitlines()[0] == ",".join(MESSAGE_HEADER)
    assert {row[1] for row in a.loop.trace} <= {k.value for k in Kind}


def test_event_loop_orders_by_time_then_kind():
    loop = EventLoop(seed=1)
    seen = []
    loop.at(2, lambda: seen.append("timer@2"))
    loop.send(Message(Kind.FOLLOW_UP, 0, 1), lambda m: seen.append("msg@1"))
    loop.send(Message(Kind.FOLLOW_UP, 0, 1), lambda m: seen.append("msg@2"), delay=2)
    loop.run()
    assert seen == ["msg@1", "msg@2", "timer@2"]
    assert loop.idle and loop.time == 2


def test_event_loop_rejects_past_timers():
    loop = EventLoop()
    loop.send(Message(Kind.FOLLOW_UP, 0, 1), lambda m: None, delay=3)
    loop.run()
    with pytest.raises(AssertionError):
        loop.at(1, lambda: None)
