"""GREAD: greedily adjoin sublists on first-occurrence request edges.

The smaller of the two sublists touched by a new edge is relocated, as one
block, next to the other sublist's incident endpoint.  Every component stays
contiguous on the line in path order (or its reverse), so every repeat
request is served at distance 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

from .core import (
    Configuration,
    CostLedger,
    EdgeKind,
    MergeEvent,
    NonlinearDemandError,
    OnlineAlgorithm,
    Request,
    RequestGraph,
    contiguous_in_path_order,
    serve,
)

LEFT, RIGHT = -1, 1


@dataclass(frozen=True)
class Endpoint:
    """What an endpoint of a sublist knows: its position and its block."""

    node: int
    position: int
    size: int
    lo: int
    hi: int


def endpoint(config: Configuration, graph: RequestGraph, v: int) -> Endpoint:
    path = graph.path_of(v)
    a, b = config.position(path[0]), config.position(path[-1])
    return Endpoint(v, config.position(v), len(path), min(a, b), max(a, b))


@dataclass(frozen=True)
class MergePlan:
    mover: Endpoint
    anchor: Endpoint
    side: int
    reverse: bool
    crossed: int

    @property
    def block(self) -> int:
        return self.mover.size

    @property
    def swaps(self) -> int:
        b = self.block
        return b * self.crossed + (b * (b - 1) // 2 if self.reverse else 0)

    @property
    def direction(self) -> int:
        """Direction of travel of the moved block."""
        return RIGHT if self.mover.hi < self.anchor.lo else LEFT


def _crossed(b: Endpoint, s: Endpoint, side: int) -> int:
    if b.hi < s.lo:
        return s.lo - b.hi - 1 if side == LEFT else s.hi - b.hi
    return b.lo - s.lo if side == LEFT else b.lo - s.hi - 1


def _needs_reverse(b: Endpoint, side: int) -> bool:
    if b.size == 1:
        return False
    # left of the anchor the incident endpoint must end up rightmost
    return b.position == (b.lo if side == LEFT else b.hi)


def plan_merge(n: int, eu: Endpoint, ev: Endpoint) -> MergePlan:
    """Decide which block moves, to which side, and whether it flips.

    The smaller block moves.  Equal sizes: the block whose incident endpoint
    lies farther from the line centre moves, then the smaller node id.  When
    the anchor is a singleton both sides are allowed and the cheaper one wins
    (ties: the side facing the moving block).
    """
    if eu.size != ev.size:
        mover, anchor = (eu, ev) if eu.size < ev.size else (ev, eu)
    else:
        du = abs(2 * eu.position - (n + 1))
        dv = abs(2 * ev.position - (n + 1))
        if du != dv:
            mover, anchor = (eu, ev) if du > dv else (ev, eu)
        else:
            mover, anchor = (eu, ev) if eu.node < ev.node else (ev, eu)

    facing = LEFT if mover.hi < anchor.lo else RIGHT
    if anchor.size == 1:
        sides = (facing, -facing)
    else:
        sides = (LEFT,) if anchor.position == anchor.lo else (RIGHT,)
    plans = [
        MergePlan(mover, anchor, side, _needs_reverse(mover, side), _crossed(mover, anchor, side))
        for side in sides
    ]
    return min(plans, key=lambda p: p.swaps)


def apply_plan(config: Configuration, plan: MergePlan, ledger: CostLedger | None = None) -> int:
    """Relocate the block; charges exactly ``plan.swaps`` adjacent swaps."""
    order = list(config.order())
    m = plan.mover
    block = order[m.lo - 1 : m.hi]
    if plan.reverse:
        block.reverse()
    rest = order[: m.lo - 1] + order[m.hi :]
    at = rest.index(plan.anchor.node) + (0 if plan.side == LEFT else 1)
    config.set_order(rest[:at] + block + rest[at:])
    if ledger is not None:
        ledger.migration += plan.swaps
    return plan.swaps


def mover_budgets(plan: MergePlan, config: Configuration) -> list[tuple[int, int]]:
    """Per-mover swap budgets as ``(node, swaps)`` in execution order.

    The block's leading node (the one facing the direction of travel) goes
    first; when the block is flipped the k-th mover travels ``k`` extra
    positions, past the nodes that already moved.
    """
    m = plan.mover
    positions = range(m.hi, m.lo - 1, -1) if plan.direction == RIGHT else range(m.lo, m.hi + 1)
    return [
        (config.node_at(p), plan.crossed + (k if plan.reverse else 0))
        for k, p in enumerate(positions)
    ]


# --- merge tree ---------------------------------------------------------------


class MergeTree:
    """Binary tree of sublists: leaves are singletons, internal nodes merges.

    Node ids match `RequestGraph` component ids.  ``weight`` is the number of
    leaves below a node, i.e. the size of the sublist it represents.
    """

    def __init__(self, n: int):
        self.n = n
        self.weight: dict[int, int] = {v: 1 for v in range(n)}
        self.left: dict[int, int] = {}
        self.right: dict[int, int] = {}
        self.parent: dict[int, int] = {}

    def add(self, event: MergeEvent) -> None:
        a, b, c = event.left, event.right, event.merged
        self.left[c], self.right[c] = a, b
        self.parent[a] = self.parent[b] = c
        self.weight[c] = self.weight[a] + self.weight[b]

    def internal_nodes(self) -> list[int]:
        return list(self.left)

    def roots(self) -> list[int]:
        return [u for u in self.weight if u not in self.parent]

    def leaves(self, u: int) -> frozenset[int]:
        out, stack = set(), [u]
        while stack:
            x = stack.pop()
            if x in self.left:
                stack += [self.left[x], self.right[x]]
            else:
                out.add(x)
        return frozenset(out)

    def sum_min(self) -> int:
        return sum(min(self.weight[self.left[u]], self.weight[self.right[u]]) for u in self.left)

    def check(self) -> None:
        for u in self.left:
            assert self.weight[u] == self.weight[self.left[u]] + self.weight[self.right[u]]
        assert sum(self.weight[r] for r in self.roots()) == self.n

    @classmethod
    def from_sequence(cls, n: int, sigma) -> "MergeTree":
        g, tree = RequestGraph(n), cls(n)
        for u, v in sigma:
            ev = g.add_edge(u, v)
            if ev is not None:
                tree.add(ev)
        return tree


def relocation_cost_bound(tree: MergeTree, n: int) -> int:
    return n * tree.sum_min()


def within_k_log_k(total: int, k: int) -> bool:
    """Exact test of ``total <= k * log2(k)`` via ``2**total <= k**k``."""
    if k <= 0:
        return total <= 0
    return 2**total <= k**k


def theorem3_bound(n: int, m: int, k: int) -> float:
    return m + n * k * math.log2(k) if k > 0 else float(m)


# --- the algorithm ------------------------------------------------------------


class MergeRecord(NamedTuple):
    merge_step: int
    size_small: int
    size_large: int
    swaps: int
    bound_n_min: int


MERGE_HEADER = MergeRecord._fields


class Gread(OnlineAlgorithm):
    name = "gread"

    def __init__(self, n: int, config: Configuration | None = None):
        super().__init__(n, config)
        self.graph = RequestGraph(n)
        self.tree = MergeTree(n)
        self.merges: list[MergeRecord] = []
        self.steps = 0

    def reconfigure(self, u: int, v: int) -> None:
        self.steps += 1
        kind = self.graph.classify(u, v)
        if kind is EdgeKind.PRESENT:
            return
        if kind is EdgeKind.NONLINEAR:
            raise NonlinearDemandError(f"edge ({u}, {v}) breaks linear demand")
        plan = plan_merge(self.n, endpoint(self.config, self.graph, u), endpoint(self.config, self.graph, v))
        swaps = apply_plan(self.config, plan, self.ledger)
        event = self.graph.add_edge(u, v)
        self.tree.add(event)
        self.merges.append(
            MergeRecord(self.steps, event.smaller, event.larger, swaps, self.n * event.smaller)
        )

    def is_contiguous(self) -> bool:
        return all(contiguous_in_path_order(self.config, p) for p in self.graph.components())


GreadState = Gread


def gread_step(state: Gread, r) -> int:
    """Serve one request; returns the cost charged this step."""
    u, v = r
    return state.request(u, v)


# --- potential ------------------------------------------------------------------

EXACT_POTENTIAL_LIMIT = 8


class Potential(NamedTuple):
    value: int
    exact: bool


def _displacement(config: Configuration, layout) -> int:
    return sum(abs(config.position(v) - p) for p, v in enumerate(layout, start=1))


def potential(config: Configuration, graph: RequestGraph, exact_limit: int = EXACT_POTENTIAL_LIMIT) -> Potential:
    """Distance from ``config`` to the closest layout embedding every component.

    Exact (exhaustive over component orders and orientations) for
    ``n <= exact_limit``; otherwise an upper estimate from a greedy layout
    that keeps components in order of their mean position.
    """
    comps = graph.components()
    if config.n <= exact_limit:
        best = None
        for perm in itertools.permutations(comps):
            flips = [(p, p[::-1]) if len(p) > 1 else (p,) for p in perm]
            for choice in itertools.product(*flips):
                layout = [v for part in choice for v in part]
                d = _displacement(config, layout)
                if best is None or d < best:
                    best = d
        return Potential(best, True)

    comps.sort(key=lambda p: sum(config.position(v) for v in p) / len(p))
    layout: list[int] = []
    for p in comps:
        start = len(layout) + 1
        fwd = sum(abs(config.position(v) - (start + i)) for i, v in enumerate(p))
        bwd = sum(abs(config.position(v) - (start + i)) for i, v in enumerate(reversed(p)))
        layout.extend(p if fwd <= bwd else p[::-1])
    return Potential(_displacement(config, layout), False)
