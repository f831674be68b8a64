"""Involution weights, telephone numbers and the ratio recurrence R(n).

Pairing k sublists uniformly at random among all involutions gives an
expected weight of at least ``T(k-2)/T(k) * x * y`` where ``T`` counts
involutions.  The functions here check that exactly for small ``k`` and
check the growth of ``T`` through ``R(n) = T(n)/T(n-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .core import UsageError

MAX_ENUM_K = 9


@lru_cache(maxsize=None)
def _telephone_table(k: int) -> tuple[int, ...]:
    t = [1, 1]
    for j in range(2, k + 1):
        t.append(t[j - 1] + (j - 1) * t[j - 2])
    return tuple(t[: k + 1])


def telephone(k: int) -> int:
    """Number of involutions on ``k`` elements."""
    if k < 0:
        raise UsageError("k must be nonnegative")
    return _telephone_table(max(k, 1))[k]


def involutions(k: int) -> Iterator[tuple[int, ...]]:
    """All involutions on ``0..k-1`` as tuples ``f`` with ``f[f[i]] == i``."""
    f = [-1] * k

    def rec(i: int):
        while i < k and f[i] >= 0:
            i += 1
        if i == k:
            yield tuple(f)
            return
        f[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, k):
            if f[j] < 0:
                f[i], f[j] = j, i
                yield from rec(i + 1)
                f[j] = -1
        f[i] = -1

    yield from rec(0)


@dataclass(frozen=True)
class InvolutionInstance:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise UsageError("x and y must have the same length")
        if any(v < 0 for v in self.x + self.y):
            raise UsageError("entries must be nonnegative")

    @classmethod
    def of(cls, x: Sequence, y: Sequence) -> "InvolutionInstance":
        return cls(tuple(map(Fraction, x)), tuple(map(Fraction, y)))

    @property
    def k(self) -> int:
        return len(self.x)

    @property
    def x_sum(self) -> Fraction:
        return sum(self.x, Fraction(0))

    @property
    def y_sum(self) -> Fraction:
        return sum(self.y, Fraction(0))

    def weight(self, f: Sequence[int]) -> Fraction:
        return sum((self.x[i] * self.y[f[i]] for i in range(self.k)), Fraction(0))


def average_involution_weight(inst: InvolutionInstance) -> Fraction:
    """Mean of ``w(f)`` over every involution ``f``, by enumeration."""
    if inst.k > MAX_ENUM_K:
        raise UsageError(f"exact enumeration limited to k <= {MAX_ENUM_K}")
    total, count = Fraction(0), 0
    for f in involutions(inst.k):
        total += inst.weight(f)
        count += 1
    return total / count


def pair_multiplicity(k: int) -> list[list[int]]:
    """``M[i][j]``: how many involutions on ``k`` elements send ``i`` to ``j``."""
    m = [[0] * k for _ in range(k)]
    for f in involutions(k):
        for i, j in enumerate(f):
            m[i][j] += 1
    return m


def ratio_R(n: int, exact: bool = False):
    """``R(n) = 1 + (n-1)/R(n-1)`` with ``R(1) = 1``, by forward recurrence."""
    if n < 1:
        raise UsageError("n must be >= 1")
    r = Fraction(1) if exact else 1.0
    for j in range(2, n + 1):
        r = 1 + (j - 1) / r
    return r


def ratio_R_table(n: int) -> np.ndarray:
    """Float ``R(1..n)``; index 0 is unused and set to nan."""
    out = np.empty(n + 1)
    out[0] = np.nan
    r = 1.0
    out[1] = r
    for j in range(2, n + 1):
        r = 1.0 + (j - 1) / r
        out[j] = r
    return out


def R_bounds_hold(n: int, slack: float = 1e-9) -> tuple[bool, int | None]:
    """Check ``sqrt(j) <= R(j) < 1 + sqrt(j+1)`` for all ``1 <= j <= n``.

    Returns ``(ok, first_failing_j)``.
    """
    r = ratio_R_table(n)[1:]
    j = np.arange(1, n + 1, dtype=float)
    bad = (r < np.sqrt(j) - slack) | (r >= 1 + np.sqrt(j + 1) + slack)
    idx = np.flatnonzero(bad)
    return (not idx.size, int(idx[0]) + 1 if idx.size else None)


def staircase_lower(k: int) -> float:
    return 1 / ((1 + math.sqrt(k + 1)) * (1 + math.sqrt(k - 1)))


def staircase_constant(k: int) -> Fraction:
    """``T(k-2)/T(k)``: the share of the ``x*y`` rectangle every involution gets.

    Asserted against ``1/((1+sqrt(k+1))(1+sqrt(k-1)))``.
    """
    if k < 2:
        raise UsageError("k must be >= 2")
    c = Fraction(telephone(k - 2), telephone(k))
    if c < staircase_lower(k):
        raise AssertionError(f"staircase constant {c} below its lower bound at k={k}")
    return c


def staircase_sweep(kmax: int) -> tuple[float, float]:
    """Min and max of ``k * T(k-2)/T(k)`` over ``2 <= k <= kmax`` in floats.

    Uses ``T(k)/T(k-2) = R(k) * R(k-1)``.
    """
    r = ratio_R_table(kmax)
    k = np.arange(2, kmax + 1)
    vals = k / (r[2:] * r[1:-1])
    return float(vals.min()), float(vals.max())
