import itertools
import math
import random

from hypothesis import given
from hypothesis import strategies as st

from linelab.core import Configuration, CostLedger, RequestGraph, kendall_distance
from linelab.gread import (
    LEFT,
    RIGHT,
    Gread,
    MergeTree,
    apply_plan,
    endpoint,
    gread_step,
    mover_budgets,
    plan_merge,
    potential,
    relocation_cost_bound,
    within_k_log_k,
)
from linelab.workloads import random_line_demand


@st.composite
def line_instances(draw, max_n=24):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    m = draw(st.integers(1, 4 * n))
    start = Configuration.random(n, rng) if draw(st.booleans()) else Configuration.identity(n)
    return n, start, random_line_demand(n, m, rng)


def test_first_request_between_line_ends():
    g = Gread(4)
    assert gread_step(g, (0, 3)) == 3
    assert g.ledger.migration == 2 and g.ledger.serving == 1
    assert g.config.order() == (1, 2, 0, 3)


def test_repeat_request_costs_one():
    g = Gread(4)
    g.request(0, 3)
    before = g.ledger.migration
    assert g.request(3, 0) == 1
    assert g.ledger.migration == before


def test_adjacent_singletons_do_not_move():
    g = Gread(5)
    assert g.request(2, 3) == 1
    assert g.config == Configuration.identity(5)


def test_equal_sizes_farther_from_centre_moves():
    # 6 at position 7 is farther from the centre of a 7-line than 1 at position 2
    cfg, g = Configuration.identity(7), RequestGraph(7)
    plan = plan_merge(7, endpoint(cfg, g, 1), endpoint(cfg, g, 6))
    assert plan.mover.node == 6 and plan.anchor.node == 1
    # equal distances fall back to the smaller node id
    plan = plan_merge(7, endpoint(cfg, g, 5), endpoint(cfg, g, 1))
    assert plan.mover.node == 1


def test_mover_joins_at_the_incident_endpoint():
    g = RequestGraph(6)
    g.add_edge(3, 4)
    g.add_edge(4, 5)
    cfg = Configuration.identity(6)
    # node 0 has to land next to whichever end of {3,4,5} the request names
    plan = plan_merge(6, endpoint(cfg, g, 3), endpoint(cfg, g, 0))
    assert plan.mover.node == 0 and plan.side == LEFT and plan.swaps == 2
    plan = plan_merge(6, endpoint(cfg, g, 5), endpoint(cfg, g, 0))
    assert plan.mover.node == 0 and plan.side == RIGHT and plan.swaps == 5


def test_two_singletons_meet_on_the_facing_side():
    cfg, g = Configuration.identity(6), RequestGraph(6)
    plan = plan_merge(6, endpoint(cfg, g, 5), endpoint(cfg, g, 1))
    assert plan.mover.node == 5 and plan.side == RIGHT and plan.swaps == 3
    apply_plan(cfg, plan)
    assert cfg.order() == (0, 1, 5, 2, 3, 4)


def test_singleton_at_distance_g_pays_g_minus_one():
    g = RequestGraph(9)
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        g.add_edge(a, b)
    cfg = Configuration.identity(9)
    plan = plan_merge(9, endpoint(cfg, g, 3), endpoint(cfg, g, 8))
    assert plan.swaps == cfg.distance(3, 8) - 1


def _fig4():
    # v1..v8 are nodes 0..7
    return [(0, 1), (2, 3), (4, 2), (5, 6), (0, 4), (3, 6), (7, 1)]


def test_fig4_merge_tree():
    tree = MergeTree.from_sequence(8, _fig4())
    tree.check()
    assert tree.sum_min() == 9
    assert tree.roots() == [14]
    internal = [(tree.weight[tree.left[u]], tree.weight[tree.right[u]]) for u in tree.internal_nodes()]
    assert internal == [(1, 1), (1, 1), (1, 2), (1, 1), (2, 3), (5, 2), (1, 7)]
    assert tree.leaves(12) == frozenset({0, 1, 2, 3, 4})


def test_balanced_tree_sum_min():
    sigma = [(0, 1), (2, 3), (4, 5), (6, 7), (1, 2), (5, 6), (3, 4)]
    tree = MergeTree.from_sequence(8, sigma)
    assert tree.sum_min() == 4 * 1 + 2 * 2 + 1 * 4
    assert relocation_cost_bound(tree, 8) == 96


def test_within_k_log_k_is_exact():
    assert within_k_log_k(0, 1) and not within_k_log_k(1, 1)
    assert within_k_log_k(24, 8) and not within_k_log_k(25, 8)
    assert within_k_log_k(4, 3) and not within_k_log_k(5, 3)  # 3 log2 3 = 4.75


@given(st.integers(2, 40), st.randoms(use_true_random=False))
def test_sum_min_at_most_k_log_k(leaves, rng):
    sigma = random_line_demand(leaves, 6 * leaves, rng)
    tree = MergeTree.from_sequence(leaves, sigma)
    k = len(tree.internal_nodes())
    tree.check()
    if k >= 2:
        assert within_k_log_k(tree.sum_min(), k)
        assert tree.sum_min() <= k * math.log2(k)


@given(line_instances())
def test_contiguity_and_per_step_bounds(case):
    n, start, sigma = case
    g = Gread(n, start)
    for u, v in sigma:
        before = g.config.copy()
        swaps0 = g.ledger.migration
        assert g.request(u, v) == 1 + g.ledger.migration - swaps0
        assert g.is_contiguous()
        assert kendall_distance(before, g.config) == g.ledger.migration - swaps0
    assert all(r.swaps <= r.bound_n_min for r in g.merges)
    assert g.ledger.migration <= relocation_cost_bound(g.tree, n)
    assert g.ledger.serving == len(sigma)


@given(line_instances(max_n=16))
def test_mover_budgets_cover_the_plan(case):
    n, start, sigma = case
    cfg, graph = start.copy(), RequestGraph(n)
    for u, v in sigma:
        if (u, v) in graph:
            continue
        plan = plan_merge(n, endpoint(cfg, graph, u), endpoint(cfg, graph, v))
        budgets = mover_budgets(plan, cfg)
        assert sorted(w for w, _ in budgets) == sorted(graph.path_of(plan.mover.node))
        assert sum(b for _, b in budgets) == plan.swaps
        led = CostLedger()
        apply_plan(cfg, plan, led)
        assert led.migration == plan.swaps
        graph.add_edge(u, v)
        assert abs(cfg.position(u) - cfg.position(v)) == 1


def test_potential_examples():
    g = RequestGraph(4)
    g.add_edge(0, 1)
    assert potential(Configuration.identity(4), g).value == 0
    two = RequestGraph(2)
    two.add_edge(0, 1)
    assert potential(Configuration([1, 0]), two) == (0, True)
    # frozen from enumerating all 24 orders with 0 and 1 adjacent
    h = Configuration.from_positions({0: 1, 1: 4, 2: 2, 3: 3})
    assert potential(h, g) == (4, True)


def _brute_potential(cfg, graph):
    best = None
    for order in itertools.permutations(range(cfg.n)):
        c = Configuration(order)
        if all(abs(c.position(a) - c.position(b)) == 1 for a, b in graph.edges):
            d = sum(abs(cfg.position(v) - c.position(v)) for v in range(cfg.n))
            best = d if best is None or d < best else best
    return best


@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_potential_matches_brute_force(n, rng):
    cfg = Configuration.random(n, rng)
    g = RequestGraph(n)
    for u, v in random_line_demand(n, n, rng, edges=rng.randint(1, n - 1)):
        g.add_edge(u, v)
    assert potential(cfg, g).value == _brute_potential(cfg, g)


@given(line_instances(max_n=8))
def test_potential_zero_after_each_step(case):
    n, start, sigma = case
    g = Gread(n, start)
    for u, v in sigma:
        g.request(u, v)
        assert potential(g.config, g.graph) == (0, True)


def test_potential_estimate_flag_for_large_n():
    g = RequestGraph(12)
    g.add_edge(0, 11)
    est = potential(Configuration.identity(12), g)
    assert not est.exact and est.value >= 0
