"""Adaptive lower-bound adversary.

The adversary keeps a committed request graph made of equal-size sublists.
It alternates between revealing a batch of edges that pairs the sublists up
(chosen so the new components are stretched across the line) and requesting
the committed edge that the player currently embeds worst.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .core import Configuration, Request, RequestGraph, UsageError, edge_key
from .seeding import stream


class DistortionReport(NamedTuple):
    total: int
    max_edge: Request | None
    max_edge_distance: int


def _pairwise_sum(positions: list[int]) -> int:
    positions.sort()
    s = len(positions)
    return sum(p * (2 * i - s + 1) for i, p in enumerate(positions))


def distortion(config: Configuration, graph: RequestGraph) -> DistortionReport:
    """Sum of line distances over all connected node pairs, plus the worst edge.

    Ties for the worst edge go to the lexicographically smallest ``(u, v)``
    with ``u < v``.
    """
    total = sum(_pairwise_sum([config.position(v) for v in p]) for p in graph.components() if len(p) > 1)
    best, best_d = None, 0
    for u, v in sorted(graph.edges):
        d = config.distance(u, v)
        if d > best_d:
            best, best_d = Request(u, v), d
    return DistortionReport(total, best, best_d)


def swap_distortion_delta(config: Configuration, graph: RequestGraph, p: int) -> int:
    """Change in distortion caused by swapping positions ``p`` and ``p + 1``.

    Only pairs with one end at ``p`` or ``p + 1`` and the other elsewhere in
    the same component change, each by exactly one.
    """
    a, b = config.node_at(p), config.node_at(p + 1)
    delta = 0
    for w in graph.path_of(a):
        if w not in (a, b):
            delta += 1 if config.position(w) <= p else -1
    for w in graph.path_of(b):
        if w not in (a, b):
            delta += 1 if config.position(w) >= p + 1 else -1
    return delta


class BoundViolation(AssertionError):
    pass


def swap_distortion_delta_check(config: Configuration, graph: RequestGraph, p: int) -> int:
    delta = swap_distortion_delta(config, graph, p)
    ell = max(len(c) for c in graph.components())
    if abs(delta) > 2 * ell:
        raise BoundViolation(f"swap at {p} changed distortion by {delta} > 2*{ell}")
    return delta


class Partition(NamedTuple):
    x: range
    c: range
    y: range


def partition_XY(n: int | Configuration) -> Partition:
    """Left third, centre, right third of the positions ``1..n``.

    Both outer parts have ``ceil(n/3)`` positions so they sit at least
    ``|C|`` apart; ``C`` is empty only for ``n = 4``.
    """
    if isinstance(n, Configuration):
        n = n.n
    if n < 3:
        raise UsageError("partition needs n >= 3")
    t = -(-n // 3)
    return Partition(range(1, t + 1), range(t + 1, n - t + 1), range(n - t + 1, n + 1))


# --- batches --------------------------------------------------------------------


@dataclass
class AdversaryState:
    n: int
    epsilon: Fraction
    seed: int = 0
    graph: RequestGraph = None
    level: int = 0
    samples: int = 32
    last_batch_distortion: int = 0
    rng: random.Random = None

    def __post_init__(self):
        if self.graph is None:
            self.graph = RequestGraph(self.n)
        if self.rng is None:
            self.rng = stream(self.seed, "adversary.pairings")

    @property
    def ell(self) -> int:
        return 2**self.level


def random_pairing(k: int, rng: random.Random) -> list[int]:
    """Uniform fixed-point-free involution on ``0..k-1`` (``k`` even)."""
    idx = list(range(k))
    rng.shuffle(idx)
    f = [0] * k
    for a, b in zip(idx[::2], idx[1::2]):
        f[a], f[b] = b, a
    return f


def greedy_pairing(hx: list[int], hy: list[int]) -> list[int]:
    """Pair the most X-heavy free sublist with the most Y-heavy other one."""
    k = len(hx)
    by_x = sorted(range(k), key=lambda i: (-hx[i], i))
    by_y = sorted(range(k), key=lambda i: (-hy[i], i))
    f = [-1] * k
    for i in by_x:
        if f[i] >= 0:
            continue
        j = next(j for j in by_y if j != i and f[j] < 0)
        f[i], f[j] = j, i
    return f


def pairing_weight(f: list[int], hx: list[int], hy: list[int]) -> int:
    return sum(hx[i] * hy[f[i]] for i in range(len(f)))


def reveal_batch(state: AdversaryState, config: Configuration) -> list[Request]:
    """Edges pairing every current sublist with another one.

    Among ``state.samples`` random pairings and the greedy one, the pairing
    maximising ``sum_i hX(L_i) * hY(L_f(i))`` is kept.  Each pair is joined
    through the endpoint pair that is currently farthest apart.
    """
    comps = state.graph.components()
    k = len(comps)
    if k < 2 or k % 2:
        raise UsageError(f"need an even number (>= 2) of sublists, have {k}")
    part = partition_XY(config.n)
    hx = [sum(config.position(v) in part.x for v in p) for p in comps]
    hy = [sum(config.position(v) in part.y for v in p) for p in comps]

    best = greedy_pairing(hx, hy)
    best_w = pairing_weight(best, hx, hy)
    for _ in range(state.samples):
        f = random_pairing(k, state.rng)
        w = pairing_weight(f, hx, hy)
        if w > best_w:
            best, best_w = f, w

    edges = []
    for i, j in enumerate(best):
        if i < j:
            a, b = comps[i], comps[j]
            ends = [(x, y) for x in {a[0], a[-1]} for y in {b[0], b[-1]}]
            x, y = min(ends, key=lambda e: (-config.distance(*e), edge_key(*e)))
            edges.append(Request(x, y))
    return sorted(edges, key=lambda e: edge_key(*e))


# --- the run ----------------------------------------------------------------------


class PhaseRecord(NamedTuple):
    n: int
    epsilon: float
    batch_level: int
    phase_requests: int
    phase_on_cost: int
    distortion_start: int
    distortion_end: int
    max_edge_dist: int


PHASE_HEADER = PhaseRecord._fields


@dataclass
class AdversaryResult:
    sequence: list[Request]
    ledger: object
    phases: list[PhaseRecord]
    graph: RequestGraph
    # max-edge distance * ell / n, sampled whenever distortion >= ell * n^2 / 36
    lemma2_constants: list[float] = field(default_factory=list)


def final_level(n: int, epsilon) -> int:
    return math.ceil(Fraction(epsilon) * int(math.log2(n)))


def adversary_run(n: int, epsilon, player, seed: int = 0, threshold=0, samples: int = 32, rounds: int = 1) -> AdversaryResult:
    """Drive ``player`` (anything with ``config``, ``ledger``, ``request``).

    Each phase reveals one batch, then requests the worst-embedded committed
    edge (re-evaluated after every request) ``ell * n`` times.  A positive
    ``threshold`` ends a phase early once the distortion falls below
    ``threshold`` times its value right after the reveal (0 disables the early
    exit; ``Fraction(1, 2)`` is the "distortion halved" variant).  Batches
    stop once sublists reach ``2 ** ceil(epsilon * log2 n)``.  ``rounds > 1``
    repeats the whole construction on a fresh committed graph.
    """
    if n < 4 or n & (n - 1):
        raise UsageError("adversary runs need n = 2^p >= 4")
    epsilon = Fraction(epsilon).limit_denominator(1 << 20)
    if not 0 < epsilon <= 1:
        raise UsageError("epsilon must lie in (0, 1]")
    threshold = Fraction(threshold)
    top = final_level(n, epsilon)
    sequence: list[Request] = []
    phases: list[PhaseRecord] = []
    constants: list[float] = []
    state = None
    for rnd in range(rounds):
        state = AdversaryState(n, epsilon, seed=seed + rnd, samples=samples)
        while state.level < top:
            batch = reveal_batch(state, player.config)
            for u, v in batch:
                state.graph.add_edge(u, v)
            state.level += 1
            ell = state.ell
            start = distortion(player.config, state.graph)
            state.last_batch_distortion = start.total
            cost0, issued = player.ledger.total, 0
            report = start
            while issued < ell * n:
                if report.total < threshold * start.total:
                    break
                if 36 * report.total >= ell * n * n:
                    constants.append(report.max_edge_distance * ell / n)
                u, v = report.max_edge
                player.request(u, v)
                sequence.append(Request(u, v))
                issued += 1
                report = distortion(player.config, state.graph)
            phases.append(
                PhaseRecord(n, float(epsilon), state.level, issued, player.ledger.total - cost0,
                            start.total, report.total, start.max_edge_distance)
            )
    return AdversaryResult(sequence, player.ledger, phases, state.graph, constants)
