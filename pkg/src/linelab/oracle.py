"""Exact offline optimum at desk scale and the embed-once offline baseline."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import (
    Configuration,
    CostLedger,
    NonlinearDemandError,
    OnlineAlgorithm,
    Request,
    UsageError,
    as_request,
    build_request_graph,
    count_inversions,
    kendall_distance,
    morph,
    serve,
)

MAX_N = 5
MAX_M = 6


@lru_cache(maxsize=None)
def _space(n: int):
    orders = list(itertools.permutations(range(n)))
    pos = np.array([[o.index(v) for v in range(n)] for o in orders], dtype=np.int64)
    swaps = np.array(
        [[count_inversions([pos[j][v] for v in a]) for j in range(len(orders))] for a in orders],
        dtype=np.int64,
    )
    return orders, pos, swaps


@dataclass(frozen=True)
class OracleResult:
    cost: int
    witness: list[Configuration]


def optimal_offline(n: int, sigma: Sequence, initial: Configuration | None = None) -> OracleResult:
    """Minimum over configuration sequences h_1..h_m of swaps plus serving.

    Cost is ``sum_i kendall(h_{i-1}, h_i) + |h_i(u_i) - h_i(v_i)|`` with
    ``h_0`` the initial configuration.  The witness lists ``h_0..h_m``.
    """
    sigma = [as_request(r) for r in sigma]
    if n > MAX_N or len(sigma) > MAX_M:
        raise UsageError(f"instance too large for the exact oracle (n<={MAX_N}, m<={MAX_M})")
    initial = initial.copy() if initial is not None else Configuration.identity(n)
    if initial.n != n:
        raise UsageError("initial configuration size does not match n")
    orders, pos, swaps = _space(n)
    start = orders.index(initial.order())
    cost = swaps[start].copy()
    back = []
    for u, v in sigma:
        if not (0 <= u < n and 0 <= v < n):
            raise UsageError(f"request ({u}, {v}) outside 0..{n - 1}")
        if back:
            total = cost[:, None] + swaps
            arg = total.argmin(axis=0)
            cost = total[arg, np.arange(len(orders))]
            back.append(arg)
        else:
            back.append(np.full(len(orders), start))
        cost = cost + np.abs(pos[:, u] - pos[:, v])
    if not sigma:
        return OracleResult(0, [initial])
    j = int(cost.argmin())
    best = int(cost[j])
    path = [j]
    for arg in reversed(back[1:]):
        j = int(arg[j])
        path.append(j)
    path.reverse()
    return OracleResult(best, [initial] + [Configuration(orders[i]) for i in path])


def replay(initial: Configuration, sigma: Sequence, witness: Sequence[Configuration]) -> CostLedger:
    """Serve ``sigma`` through the witness with real adjacent swaps."""
    if len(witness) != len(sigma) + 1:
        raise UsageError("witness must hold one configuration per request plus the start")
    cfg, ledger = initial.copy(), CostLedger()
    for r, target in zip(sigma, witness[1:]):
        morph(cfg, target, ledger)
        serve(cfg, r, ledger)
    return ledger


# --- embed-once baseline ------------------------------------------------------------


def line_embedding(n: int, sigma: Sequence) -> Configuration:
    """Every request-graph component laid out contiguously in path order.

    Components are ordered by smallest node id; each path starts at its
    smaller end node.
    """
    try:
        graph = build_request_graph(n, sigma)
    except NonlinearDemandError as exc:
        raise UsageError(f"request graph is not a union of paths: {exc}") from None
    order = []
    for p in graph.components():
        order.extend(p if p[0] <= p[-1] else p[::-1])
    return Configuration(order)


class OfflineLine(OnlineAlgorithm):
    """Knows the whole sequence: moves to the final line embedding on the
    first request, then serves everything in place."""

    name = "offline-baseline"

    def __init__(self, n: int, sigma: Sequence, config: Configuration | None = None):
        super().__init__(n, config)
        self.target = line_embedding(n, sigma)
        self.upfront = kendall_distance(self.config, self.target)

    def reconfigure(self, u: int, v: int) -> None:
        if self.config != self.target:
            morph(self.config, self.target, self.ledger)


@dataclass(frozen=True)
class BaselineCost:
    upfront: int
    serving: int

    @property
    def total(self) -> int:
        return self.upfront + self.serving


def offline_line_baseline(n: int, sigma: Sequence, initial: Configuration | None = None) -> BaselineCost:
    sigma = [as_request(r) for r in sigma]
    initial = initial if initial is not None else Configuration.identity(n)
    target = line_embedding(n, sigma)
    serving = sum(target.distance(u, v) for u, v in sigma)
    return BaselineCost(kendall_distance(initial, target), serving)
