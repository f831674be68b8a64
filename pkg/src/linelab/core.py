"""Line-network model: placements, adjacent swaps, serving cost and request graphs.

Positions are 1-based (``1..n``) and node ids are dense integers ``0..n-1``.
All costs are exact integers.
"""

from __future__ import annotations

import csv
import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class UsageError(ValueError):
    """Invalid arguments (bad node ids, positions, sizes)."""


class NonlinearDemandError(ValueError):
    """A request edge would give a node degree 3 or close a cycle."""


class Request(NamedTuple):
    source: int
    target: int


def as_request(r) -> Request:
    u, v = r
    if u == v:
        raise UsageError(f"request endpoints must differ, got ({u}, {v})")
    return Request(int(u), int(v))


@dataclass
class CostLedger:
    serving: int = 0
    migration: int = 0
    messages: int = 0

    @property
    def total(self) -> int:
        return self.serving + self.migration + self.messages

    def copy(self) -> "CostLedger":
        return CostLedger(self.serving, self.migration, self.messages)


class Configuration:
    """Bijection between nodes and line positions, with inverse lookup."""

    __slots__ = ("n", "_pos", "_at")

    def __init__(self, order: Sequence[int]):
        n = len(order)
        if n < 1 or sorted(order) != list(range(n)):
            raise UsageError("order must be a permutation of 0..n-1")
        self.n = n
        # _at[p] is the node at position p; index 0 unused
        self._at = [-1] + list(order)
        self._pos = [0] * n
        for p, v in enumerate(order, start=1):
            self._pos[v] = p

    @classmethod
    def identity(cls, n: int) -> "Configuration":
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Configuration":
        order = list(range(n))
        rng.shuffle(order)
        return cls(order)

    @classmethod
    def from_positions(cls, positions: dict[int, int] | Sequence[int]) -> "Configuration":
        """Build from a node -> position mapping (positions 1-based)."""
        items = positions.items() if isinstance(positions, dict) else enumerate(positions)
        order = [None] * len(positions)
        for v, p in items:
            if not 1 <= p <= len(order) or order[p - 1] is not None:
                raise UsageError("positions must be a bijection onto 1..n")
            order[p - 1] = v
        return cls(order)

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise UsageError(f"unknown node id {v} for n={self.n}")

    def position(self, v: int) -> int:
        self._check_node(v)
        return self._pos[v]

    def node_at(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise UsageError(f"position {p} outside 1..{self.n}")
        return self._at[p]

    def order(self) -> tuple[int, ...]:
        return tuple(self._at[1:])

    def positions(self) -> tuple[int, ...]:
        return tuple(self._pos)

    def distance(self, u: int, v: int) -> int:
        self._check_node(u)
        self._check_node(v)
        return abs(self._pos[u] - self._pos[v])

    def swap_at(self, p: int, ledger: CostLedger | None = None) -> None:
        """Exchange the nodes at positions ``p`` and ``p + 1``."""
        if not 1 <= p < self.n:
            raise UsageError(f"swap position {p} outside 1..{self.n - 1}")
        a, b = self._at[p], self._at[p + 1]
        self._at[p], self._at[p + 1] = b, a
        self._pos[a], self._pos[b] = p + 1, p
        if ledger is not None:
            ledger.migration += 1

    def set_order(self, order: Sequence[int]) -> None:
        """Overwrite the placement in place (no cost charged)."""
        other = Configuration(order)
        if other.n != self.n:
            raise UsageError("size mismatch")
        self._at, self._pos = other._at, other._pos

    def check(self) -> None:
        for v in range(self.n):
            assert self._at[self._pos[v]] == v, "placement and inverse disagree"

    def copy(self) -> "Configuration":
        return Configuration(self._at[1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, Configuration) and self._at == other._at

    def __hash__(self):
        return hash(tuple(self._at))

    def __repr__(self) -> str:
        return f"Configuration({list(self._at[1:])})"


def distance(c: Configuration, u: int, v: int) -> int:
    return c.distance(u, v)


def swap_at(c: Configuration, p: int, ledger: CostLedger | None = None) -> None:
    c.swap_at(p, ledger)


def serve(c: Configuration, r, ledger: CostLedger) -> int:
    u, v = as_request(r)
    d = c.distance(u, v)
    ledger.serving += d
    return d


def count_inversions(seq: Sequence[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j] (merge sort, O(n log n))."""

    def sort(a):
        if len(a) <= 1:
            return a, 0
        mid = len(a) // 2
        left, x = sort(a[:mid])
        right, y = sort(a[mid:])
        merged, inv, i, j = [], x + y, 0, 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                inv += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, inv

    return sort(list(seq))[1]


def kendall_distance(a: Configuration, b: Configuration) -> int:
    """Minimum number of adjacent swaps turning placement ``a`` into ``b``."""
    if a.n != b.n:
        raise UsageError(f"configurations differ in size ({a.n} vs {b.n})")
    return count_inversions([b.position(v) for v in a.order()])


def morph(c: Configuration, target: Configuration, ledger: CostLedger | None = None) -> int:
    """Rearrange ``c`` into ``target`` by adjacent swaps; returns the swap count.

    Insertion sort on target ranks, so the count equals ``kendall_distance``.
    """
    if c.n != target.n:
        raise UsageError("size mismatch")
    swaps = 0
    for i in range(2, c.n + 1):
        j = i
        while j > 1 and target.position(c.node_at(j - 1)) > target.position(c.node_at(j)):
            c.swap_at(j - 1, ledger)
            swaps += 1
            j -= 1
    return swaps


# --- request graph ----------------------------------------------------------


class EdgeKind(enum.Enum):
    MERGE = "merge"
    PRESENT = "present"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True)
class MergeEvent:
    """Two sublists joined by a first-occurrence edge.

    ``left`` is the component holding the request source, ``right`` the one
    holding the target; ``merged`` is the id of the new component.
    """

    edge: Request
    left: int
    right: int
    merged: int
    left_size: int
    right_size: int

    @property
    def smaller(self) -> int:
        return min(self.left_size, self.right_size)

    @property
    def larger(self) -> int:
        return max(self.left_size, self.right_size)


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class RequestGraph:
    """Accumulated request edges kept as disjoint ordered paths (sublists).

    Singleton components carry their node id as component id; every merge
    allocates a fresh id ``n, n+1, ...`` which doubles as merge-tree node id.
    """

    def __init__(self, n: int):
        if n < 1:
            raise UsageError("n must be positive")
        self.n = n
        self.edges: set[tuple[int, int]] = set()
        self._nbrs: list[list[int]] = [[] for _ in range(n)]
        self._comp = list(range(n))
        self._paths: dict[int, list[int]] = {v: [v] for v in range(n)}
        self._next_id = n

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise UsageError(f"unknown node id {v} for n={self.n}")

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self._nbrs[v])

    def component_of(self, v: int) -> int:
        return self._comp[v]

    def path(self, cid: int) -> tuple[int, ...]:
        return tuple(self._paths[cid])

    def path_of(self, v: int) -> tuple[int, ...]:
        return tuple(self._paths[self._comp[v]])

    def size_of(self, v: int) -> int:
        return len(self._paths[self._comp[v]])

    def components(self) -> list[tuple[int, ...]]:
        """Paths in order of their smallest node id."""
        return sorted((tuple(p) for p in self._paths.values()), key=min)

    def component_ids(self) -> list[int]:
        return list(self._paths)

    def __len__(self) -> int:
        return len(self._paths)

    def __contains__(self, edge) -> bool:
        u, v = edge
        return edge_key(u, v) in self.edges

    def classify(self, u: int, v: int) -> EdgeKind:
        self._check(u)
        self._check(v)
        if u == v:
            raise UsageError("self-loop request")
        if edge_key(u, v) in self.edges:
            return EdgeKind.PRESENT
        if self._comp[u] == self._comp[v] or self.degree(u) >= 2 or self.degree(v) >= 2:
            return EdgeKind.NONLINEAR
        return EdgeKind.MERGE

    def add_edge(self, u: int, v: int) -> MergeEvent | None:
        """Insert edge ``(u, v)``.

        Returns the merge event for a new edge, ``None`` if the edge is
        already present, and raises `NonlinearDemandError` (leaving the graph
        untouched) if the edge would break the disjoint-paths structure.
        """
        kind = self.classify(u, v)
        if kind is EdgeKind.PRESENT:
            return None
        if kind is EdgeKind.NONLINEAR:
            raise NonlinearDemandError(f"edge ({u}, {v}) breaks linear demand")
        cu, cv = self._comp[u], self._comp[v]
        pu, pv = self._paths.pop(cu), self._paths.pop(cv)
        if pu[-1] != u:
            pu.reverse()
        if pv[0] != v:
            pv.reverse()
        merged = pu + pv
        cid = self._next_id
        self._next_id += 1
        self._paths[cid] = merged
        for w in merged:
            self._comp[w] = cid
        self._nbrs[u].append(v)
        self._nbrs[v].append(u)
        self.edges.add(edge_key(u, v))
        return MergeEvent(Request(u, v), cu, cv, cid, len(pu), len(pv))

    def check(self) -> None:
        seen = set()
        for cid, path in self._paths.items():
            for a, b in zip(path, path[1:]):
                assert edge_key(a, b) in self.edges
            for w in path:
                assert self._comp[w] == cid and w not in seen
                seen.add(w)
        assert len(seen) == self.n
        assert all(len(nb) <= 2 for nb in self._nbrs)
        assert len(self.edges) == self.n - len(self._paths)


def is_linear_demand(n: int, sigma: Iterable) -> bool:
    g = RequestGraph(n)
    try:
        for r in sigma:
            g.add_edge(*as_request(r))
    except NonlinearDemandError:
        return False
    return True


def build_request_graph(n: int, sigma: Iterable) -> RequestGraph:
    """Request graph of ``sigma``; raises `NonlinearDemandError` if not linear."""
    g = RequestGraph(n)
    for r in sigma:
        g.add_edge(*as_request(r))
    return g


def contiguous_in_path_order(c: Configuration, path: Sequence[int]) -> bool:
    ps = [c.position(v) for v in path]
    if len(ps) <= 1:
        return True
    step = ps[1] - ps[0]
    return step in (1, -1) and all(b - a == step for a, b in zip(ps, ps[1:]))


# --- online algorithms and traces -------------------------------------------


class OnlineAlgorithm:
    """Base online player.

    On each request the player first reconfigures (``reconfigure``, which may
    only use adjacent swaps charged to ``self.ledger``) and then pays the
    serving cost in the new configuration.  Subclasses never see future
    requests.
    """

    name = "abstract"

    def __init__(self, n: int, config: Configuration | None = None):
        self.n = n
        self.config = config.copy() if config is not None else Configuration.identity(n)
        if self.config.n != n:
            raise UsageError("configuration size does not match n")
        self.ledger = CostLedger()

    def reconfigure(self, u: int, v: int) -> None:
        pass

    def request(self, u: int, v: int) -> int:
        before = self.ledger.total
        self.reconfigure(u, v)
        serve(self.config, (u, v), self.ledger)
        return self.ledger.total - before


class NeverSwap(OnlineAlgorithm):
    """Static layout: serves every request where it stands."""

    name = "never-swap"


class TraceRecord(NamedTuple):
    step: int
    src: int
    dst: int
    serve_cost: int
    swaps_this_step: int
    cum_serve: int
    cum_swaps: int
    components: int


TRACE_HEADER = TraceRecord._fields


class _Components:
    """Union-find component counter tolerant of arbitrary request graphs."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, u: int, v: int) -> None:
        a, b = self.find(u), self.find(v)
        if a != b:
            self.parent[a] = b
            self.count -= 1


class Tracer:
    """Wraps a player and records one `TraceRecord` per request."""

    def __init__(self, player: OnlineAlgorithm):
        self.player = player
        self.records: list[TraceRecord] = []
        self._uf = _Components(player.n)

    @property
    def n(self) -> int:
        return self.player.n

    @property
    def config(self) -> Configuration:
        return self.player.config

    @property
    def ledger(self) -> CostLedger:
        return self.player.ledger

    def request(self, u: int, v: int) -> int:
        ledger = self.player.ledger
        serve0, swaps0 = ledger.serving, ledger.migration
        cost = self.player.request(u, v)
        self._uf.union(u, v)
        self.records.append(
            TraceRecord(
                len(self.records) + 1, u, v,
                ledger.serving - serve0, ledger.migration - swaps0,
                ledger.serving, ledger.migration, self._uf.count,
            )
        )
        return cost


def run(player: OnlineAlgorithm, sigma: Iterable) -> list[TraceRecord]:
    tracer = Tracer(player)
    for r in sigma:
        tracer.request(*as_request(r))
    return tracer.records


def write_csv(fh, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
