"""Message-passing GREAD.

Every node is a small state machine that only knows its own position, the
ids of its physical neighbours (link-level knowledge), its neighbours on its
sublist, and, when it is an end node, the size of its sublist.  Requests are
handled one at a time on a deterministic event loop:

1. the source locates the destination by exponential search (probes with hop
   budgets 1, 2, 4, ... sent left, then right, each round);
2. the destination answers with its own endpoint data, both ends compute the
   same merge plan, and each pushes the merged size to the far end of its
   own sublist;
3. the end node of the moving block sends a follow-up chain through the
   block telling every member its swap budget and start time;
4. members swap one neighbour at a time, each swap being one message.

Messages cost one unit per hop and land in ``ledger.messages``; swaps land in
``ledger.migration`` exactly as in the centralized `Gread`.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    Configuration,
    EdgeKind,
    NonlinearDemandError,
    OnlineAlgorithm,
    RequestGraph,
    as_request,
    write_csv,
)
from .gread import LEFT, RIGHT, Endpoint, MergePlan, plan_merge
from .seeding import stream


class Kind(str, enum.Enum):
    PROBE_LEFT = "ProbeLeft"
    PROBE_RIGHT = "ProbeRight"
    ROUTE_FOUND = "RouteFound"
    SIZE_EXCHANGE = "SizeExchange"
    FOLLOW_UP = "FollowUp"
    SWAP_REQUEST = "SwapRequest"


@dataclass
class NodeLocalState:
    node: int
    position: int
    end_bit: bool = True
    list_size: int = 1
    sub_nbrs: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class Message:
    kind: Kind
    src: int
    dst: int
    payload: tuple[int, ...] = ()


MESSAGE_HEADER = ("time", "kind", "from", "to", "payload")

# deliveries at a given time are processed before local timers at that time
_DELIVERY, _TIMER = 0, 1


class EventLoop:
    """Single-threaded discrete-event queue.

    Events are ordered by time, then deliveries before timers, then a seeded
    random tiebreak, then insertion order, so a fixed seed replays exactly.
    """

    def __init__(self, seed: int = 0, record: bool = False):
        self.rng = stream(seed, "distributed.ties")
        self.time = 0
        self.record = record
        self.trace: list[tuple] = []
        self._queue: list = []
        self._seq = 0

    def _push(self, time: int, prio: int, item) -> None:
        heapq.heappush(self._queue, (time, prio, self.rng.random(), self._seq, item))
        self._seq += 1

    def send(self, msg: Message, handler: Callable[[Message], None], delay: int = 1) -> None:
        self._push(self.time + delay, _DELIVERY, (msg, handler))

    def at(self, time: int, action: Callable[[], None]) -> None:
        if time < self.time:
            raise AssertionError("timer scheduled in the past")
        self._push(time, _TIMER, (None, action))

    @property
    def idle(self) -> bool:
        return not self._queue

    def run(self) -> None:
        while self._queue:
            time, _, _, _, (msg, fn) = heapq.heappop(self._queue)
            self.time = time
            if msg is None:
                fn()
                continue
            if self.record:
                self.trace.append((time, msg.kind.value, msg.src, msg.dst, ":".join(map(str, msg.payload))))
            fn(msg)

    def write_trace(self, fh) -> None:
        write_csv(fh, MESSAGE_HEADER, self.trace)


@dataclass
class _Mover:
    budget: int
    direction: int


class DistributedGread(OnlineAlgorithm):
    """GREAD executed by per-node message passing.

    ``graph`` mirrors the revealed request graph; the protocol never reads
    it, it is only used to reject nonlinear input and to check the nodes'
    local state at quiescence.
    """

    name = "distributed-gread"

    def __init__(self, n: int, config: Configuration | None = None, seed: int = 0, record: bool = False):
        super().__init__(n, config)
        self.loop = EventLoop(seed, record)
        self.nodes = [NodeLocalState(v, self.config.position(v)) for v in range(n)]
        self.graph = RequestGraph(n)
        self.first_routes: list[tuple[int, int]] = []  # (line distance, probe hops)
        self.repeat_routes: list[int] = []
        self._found: dict[int, Endpoint] = {}
        self._plans: dict[int, MergePlan] = {}
        self._movers: dict[int, _Mover] = {}
        self._hops_back = 0

    # --- link level -------------------------------------------------------

    def _neighbor(self, w: int, direction: int) -> int | None:
        p = self.nodes[w].position + direction
        return self.config.node_at(p) if 1 <= p <= self.n else None

    def _send(self, kind: Kind, src: int, dst: int, payload: tuple, handler) -> None:
        self.ledger.messages += 1
        self.loop.send(Message(kind, src, dst, payload), handler)

    def _local_endpoint(self, w: int) -> Endpoint:
        """Endpoint data an end node can compute from its own state."""
        st = self.nodes[w]
        p, s = st.position, st.list_size
        if s == 1:
            return Endpoint(w, p, 1, p, p)
        right = self._neighbor(w, RIGHT)
        if right is not None and right in st.sub_nbrs:
            return Endpoint(w, p, s, p, p + s - 1)
        return Endpoint(w, p, s, p - s + 1, p)

    @staticmethod
    def _pack(e: Endpoint) -> tuple[int, int, int]:
        orient = 0 if e.size == 1 else (RIGHT if e.lo == e.position else LEFT)
        return e.size, e.position, orient

    @staticmethod
    def _unpack(node: int, size: int, pos: int, orient: int) -> Endpoint:
        if orient == RIGHT:
            return Endpoint(node, pos, size, pos, pos + size - 1)
        if orient == LEFT:
            return Endpoint(node, pos, size, pos - size + 1, pos)
        return Endpoint(node, pos, 1, pos, pos)

    # --- routing ----------------------------------------------------------

    def route_first(self, u: int, v: int) -> tuple[int, int]:
        """Locate ``v`` from ``u`` by exponential search.

        Round r sends a probe with hop budget ``2**r`` to the left, runs it to
        quiescence, then does the same to the right.  Probes that run out of
        budget or hit the end of the line are dropped.  Returns the probe hops
        spent and the direction in which ``v`` was found; the reply is charged
        to the merge protocol.
        """
        self._found.pop(v, None)
        m0 = self.ledger.messages
        payload = (u, v) + self._pack(self._local_endpoint(u))
        budget = 1
        while True:
            for direction, kind in ((LEFT, Kind.PROBE_LEFT), (RIGHT, Kind.PROBE_RIGHT)):
                nxt = self._neighbor(u, direction)
                if nxt is None:
                    continue
                self._send(kind, u, nxt, payload + (budget - 1, 1), self._on_probe)
                self.loop.run()
                if v in self._found:
                    return self.ledger.messages - m0, direction
            if budget >= self.n:
                raise AssertionError(f"node {v} not reachable from {u}")
            budget *= 2

    def _on_probe(self, msg: Message) -> None:
        origin, target, size, pos, orient, left, hops = msg.payload
        w = msg.dst
        if w == target:
            self._found[w] = self._unpack(origin, size, pos, orient)
            self._hops_back = hops
            return
        if left == 0:
            return
        direction = LEFT if msg.kind is Kind.PROBE_LEFT else RIGHT
        nxt = self._neighbor(w, direction)
        if nxt is not None:
            self._send(msg.kind, w, nxt, (origin, target, size, pos, orient, left - 1, hops + 1), self._on_probe)

    # --- merging ----------------------------------------------------------

    def merge_protocol(self, u: int, v: int) -> tuple[int, int]:
        """Join the sublists ending at ``u`` and ``v`` (``v`` already located).

        Returns the swaps and messages spent, including ``v``'s reply.
        """
        s0, m0 = self.ledger.migration, self.ledger.messages
        eu = self._found.pop(v)
        ev = self._local_endpoint(v)
        self._plans[v] = plan_merge(self.n, eu, ev)
        # reply travels back the way the probe came
        toward_u = RIGHT if eu.position > ev.position else LEFT
        reply = (u, v) + self._pack(ev) + (toward_u, self._hops_back)
        self._send(Kind.ROUTE_FOUND, v, self._neighbor(v, toward_u), reply, self._on_route_found)
        self.loop.run()

        plan = self._plans.pop(u)
        if plan != self._plans.pop(v):
            raise AssertionError("ends computed different merge plans")
        merged = eu.size + ev.size
        for end in (u, v):
            self._announce_size(end, merged)
        self.loop.run()

        self._start_follow_up(plan)
        self.loop.run()

        for a, b in ((u, v), (v, u)):
            st = self.nodes[a]
            st.sub_nbrs.append(b)
            st.end_bit = len(st.sub_nbrs) < 2
        return self.ledger.migration - s0, self.ledger.messages - m0

    def _on_route_found(self, msg: Message) -> None:
        u, v, size, pos, orient, toward_u, left = msg.payload
        w = msg.dst
        if left > 1:
            self._send(Kind.ROUTE_FOUND, w, self._neighbor(w, toward_u), msg.payload[:-1] + (left - 1,), self._on_route_found)
            return
        if w != u:
            raise AssertionError("route reply did not reach the source")
        self._plans[u] = plan_merge(self.n, self._local_endpoint(u), self._unpack(v, size, pos, orient))

    def _announce_size(self, end: int, size: int) -> None:
        st = self.nodes[end]
        if not st.sub_nbrs:
            st.list_size = size
            return
        self._send(Kind.SIZE_EXCHANGE, end, st.sub_nbrs[0], (size,), self._on_size)

    def _on_size(self, msg: Message) -> None:
        st = self.nodes[msg.dst]
        onward = [w for w in st.sub_nbrs if w != msg.src]
        if onward:
            self._send(Kind.SIZE_EXCHANGE, msg.dst, onward[0], msg.payload, self._on_size)
        else:
            st.list_size = msg.payload[0]

    def _start_follow_up(self, plan: MergePlan) -> None:
        x = plan.mover.node
        b = plan.block
        p = self.nodes[x].position
        leads = p == (plan.mover.hi if plan.direction == RIGHT else plan.mover.lo)
        rank = 0 if leads else b - 1
        t0 = self.loop.time + b
        info = (plan.crossed, int(plan.reverse), plan.direction, t0)
        self._schedule_mover(x, rank, info)
        if self.nodes[x].sub_nbrs:
            step = 1 if leads else -1
            self._send(Kind.FOLLOW_UP, x, self.nodes[x].sub_nbrs[0], (rank + step, step) + info, self._on_follow_up)

    def _on_follow_up(self, msg: Message) -> None:
        rank, step, *info = msg.payload
        w = msg.dst
        self._schedule_mover(w, rank, tuple(info))
        onward = [y for y in self.nodes[w].sub_nbrs if y != msg.src]
        if onward:
            self._send(Kind.FOLLOW_UP, w, onward[0], (rank + step, step) + tuple(info), self._on_follow_up)

    def _schedule_mover(self, w: int, rank: int, info: tuple) -> None:
        crossed, reverse, direction, t0 = info
        budget = crossed + (rank if reverse else 0)
        start = t0 + rank * crossed + (rank * (rank - 1) // 2 if reverse else 0)
        if budget == 0:
            return
        self._movers[w] = _Mover(budget, direction)
        self.loop.at(start, lambda: self._swap_step(w))

    def _swap_step(self, w: int) -> None:
        mv = self._movers[w]
        other = self._neighbor(w, mv.direction)
        if other is None:
            raise AssertionError(f"node {w} ran off the line")
        self._send(Kind.SWAP_REQUEST, w, other, (mv.budget,), self._on_swap)

    def _on_swap(self, msg: Message) -> None:
        w, other = msg.src, msg.dst
        a, b = self.nodes[w], self.nodes[other]
        if abs(a.position - b.position) != 1:
            raise AssertionError("swap partner is no longer adjacent")
        self.config.swap_at(min(a.position, b.position), self.ledger)
        a.position, b.position = b.position, a.position
        mv = self._movers[w]
        mv.budget -= 1
        if mv.budget:
            self._swap_step(w)
        else:
            del self._movers[w]

    # --- requests ---------------------------------------------------------

    def reconfigure(self, u: int, v: int) -> None:
        kind = self.graph.classify(u, v)
        if kind is EdgeKind.NONLINEAR:
            raise NonlinearDemandError(f"edge ({u}, {v}) breaks linear demand")
        if kind is EdgeKind.PRESENT:
            # v is a sublist neighbour, hence a physical neighbour of u
            direction = RIGHT if self._neighbor(u, RIGHT) == v else LEFT
            kind = Kind.PROBE_RIGHT if direction == RIGHT else Kind.PROBE_LEFT
            m0 = self.ledger.messages
            self._send(kind, u, v, (u, v, 1, 0, 0, 0, 1), lambda msg: None)
            self.loop.run()
            self.repeat_routes.append(self.ledger.messages - m0)
            return
        i = self.config.distance(u, v)
        hops, _ = self.route_first(u, v)
        self.first_routes.append((i, hops))
        self.merge_protocol(u, v)
        self.graph.add_edge(u, v)

    # --- checks -----------------------------------------------------------

    def check_quiescent(self) -> None:
        """Local state agrees with the true line and component structure."""
        if not self.loop.idle or self._movers:
            raise AssertionError("protocol not quiescent")
        for st in self.nodes:
            if st.position != self.config.position(st.node):
                raise AssertionError(f"node {st.node} has a stale position")
            if sorted(st.sub_nbrs) != sorted(self.graph.neighbors(st.node)):
                raise AssertionError(f"node {st.node} has wrong sublist neighbours")
            if st.end_bit != (len(st.sub_nbrs) < 2):
                raise AssertionError(f"node {st.node} has a wrong end bit")
        for path in self.graph.components():
            for end in {path[0], path[-1]}:
                if self.nodes[end].list_size != len(path):
                    raise AssertionError(f"end {end} reports size {self.nodes[end].list_size}, true {len(path)}")


def run_distributed_gread(n: int, sigma: Iterable, seed: int = 0, config: Configuration | None = None,
                          record: bool = False) -> DistributedGread:
    """Serve ``sigma`` through the event loop; returns the finished simulation."""
    sim = DistributedGread(n, config, seed=seed, record=record)
    for r in sigma:
        u, v = as_request(r)
        sim.request(u, v)
    sim.check_quiescent()
    return sim

