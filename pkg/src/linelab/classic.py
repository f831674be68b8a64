"""Classic list update under the cursor cost model, and the star example.

Cursor model: at each access a cursor starts on the head of the list.  Two
unit-cost operations exist: *move* the cursor one position (touching the
element it lands on) and *swap* the element under the cursor with a neighbour
(touching that neighbour; the cursor follows its element).  An access is
served once the requested element has been touched; the head counts as
touched for free.  Accessing the element at 0-based index ``d`` and moving it
to the front therefore costs ``2d``.

The offline optimum is charged in the paid-exchange form of this model (walk
to the element, then pay one unit per adjacent swap); see
`optimal_list_update`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .core import OnlineAlgorithm, Request, UsageError, count_inversions

MAX_OPT_N = 5
MAX_OPT_M = 8


@dataclass
class ClassicList:
    order: list[int]
    cursor: int = 0

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise UsageError("list must hold 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "ClassicList":
        return cls(list(range(n)))


def mtf_serve(lst: ClassicList, elem: int) -> int:
    """Access ``elem`` and move it to the front; returns the cost ``2d``."""
    try:
        d = lst.order.index(elem)
    except ValueError:
        raise UsageError(f"element {elem} not in list") from None
    lst.order.insert(0, lst.order.pop(d))
    lst.cursor = 0
    return 2 * d


def mtf_trace(initial: Sequence[int], tau: Sequence[int]) -> tuple[list[tuple[int, ...]], int]:
    """States of MTF before each access plus the final state, and total cost."""
    lst = ClassicList(list(initial))
    states = [tuple(lst.order)]
    cost = 0
    for x in tau:
        cost += mtf_serve(lst, x)
        states.append(tuple(lst.order))
    return states, cost


def random_trace(initial: Sequence[int], tau: Sequence[int], rng: random.Random, swaps: int = 2) -> list[tuple[int, ...]]:
    """States of an arbitrary algorithm that makes a few random swaps per access."""
    order = list(initial)
    states = [tuple(order)]
    for _ in tau:
        for _ in range(rng.randint(0, swaps)):
            if len(order) > 1:
                i = rng.randrange(len(order) - 1)
                order[i], order[i + 1] = order[i + 1], order[i]
        states.append(tuple(order))
    return states


@dataclass(frozen=True)
class InversionBits:
    """Inversion sequence b1 a1 b2 a2 ... for a fixed pair ``(u, v)``.

    ``checked`` lists the (1-based) accesses where MTF touched both elements
    while accessing one of them; on those steps b_i must differ from a_i.
    """

    u: int
    v: int
    bits: tuple[int, ...]
    checked: tuple[int, ...] = field(default=())
    violations: tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def observation_holds(self) -> bool:
        return not self.violations


def _before(state: Sequence[int], u: int, v: int) -> bool:
    return state.index(u) < state.index(v)


def inversion_bits(mtf_states: Sequence[Sequence[int]], other_states: Sequence[Sequence[int]], u: int, v: int) -> InversionBits:
    """Juxtapose MTF with another algorithm on the relative order of ``u, v``.

    Both traces hold the state before each access followed by the final
    state.  b_i compares the other algorithm before access i with MTF before
    access i; a_i compares it with MTF after access i.  The accessed element
    is recovered as the head of MTF's state after the access.
    """
    if len(mtf_states) != len(other_states):
        raise UsageError("traces have unequal length")
    bits, checked, bad = [], [], []
    for i in range(1, len(mtf_states)):
        ref = _before(other_states[i - 1], u, v)
        b = int(_before(mtf_states[i - 1], u, v) != ref)
        a = int(_before(mtf_states[i], u, v) != ref)
        bits += [b, a]
        x = mtf_states[i][0]
        if x in (u, v):
            other = v if x == u else u
            prev = mtf_states[i - 1]
            if prev.index(other) < prev.index(x):
                checked.append(i)
                if a == b:
                    bad.append(i)
    return InversionBits(u, v, tuple(bits), tuple(checked), tuple(bad))


# --- exact offline optimum ------------------------------------------------------


@lru_cache(maxsize=None)
def _orders(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _swap_matrix(n: int) -> list[list[int]]:
    orders = _orders(n)
    rank = [{v: i for i, v in enumerate(o)} for o in orders]
    return [[count_inversions([rank[j][v] for v in a]) for j in range(len(orders))] for a in orders]


def optimal_list_update(n: int, tau: Sequence[int], initial: Sequence[int] | None = None) -> int:
    """Exact offline optimum for classic list update.

    Each access walks the cursor to the element (its 0-based depth) and may
    then rearrange the list by paid adjacent swaps, so moving from order L to
    L' while serving x costs ``depth_L(x) + inversions(L, L')``.  MTF's own
    ``2d`` is one such strategy.  Dynamic programming over all ``n!`` orders
    per access; refuses instances beyond ``n <= 5`` and ``len(tau) <= 8``.
    """
    if n > MAX_OPT_N or len(tau) > MAX_OPT_M:
        raise UsageError(f"instance too large for exact search (n<={MAX_OPT_N}, m<={MAX_OPT_M})")
    start = tuple(initial) if initial is not None else tuple(range(n))
    if sorted(start) != list(range(n)):
        raise UsageError("initial list must be a permutation of 0..n-1")
    orders = _orders(n)
    swaps = _swap_matrix(n)
    big = 1 << 60
    layer = [big] * len(orders)
    layer[orders.index(start)] = 0
    for x in tau:
        if not 0 <= x < n:
            raise UsageError(f"element {x} not in list")
        nxt = [big] * len(orders)
        for i, base in enumerate(layer):
            if base == big:
                continue
            base += orders[i].index(x)
            row = swaps[i]
            for j in range(len(orders)):
                if base + row[j] < nxt[j]:
                    nxt[j] = base + row[j]
        layer = nxt
    return min(layer)


# --- star example ------------------------------------------------------------

CENTER = 0


def star_sequence(n: int, m: int) -> list[Request]:
    """Cyclic requests (c, v1), (c, v2), ..., (c, v_{n-1}), (c, v1), ...

    The centre is node 0 and the leaves are nodes 1..n-1.
    """
    if n < 2:
        raise UsageError("star needs n >= 2")
    return [Request(CENTER, 1 + i % (n - 1)) for i in range(m)]


class MoveCenter(OnlineAlgorithm):
    """Walks the centre node next to each requested leaf before serving."""

    name = "move-center"

    def __init__(self, n: int, config=None, center: int = CENTER):
        super().__init__(n, config)
        self.center = center

    def reconfigure(self, u: int, v: int) -> None:
        c = self.center
        if c not in (u, v):
            return
        leaf = v if u == c else u
        cfg = self.config
        while cfg.distance(c, leaf) > 1:
            p = cfg.position(c)
            cfg.swap_at(p if cfg.position(leaf) > p else p - 1, self.ledger)
