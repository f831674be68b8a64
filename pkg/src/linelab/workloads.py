"""Request sequence generators and the plain-text sequence format."""

from __future__ import annotations

import random
from typing import Iterable, TextIO

from .core import Request, UsageError


def random_line_demand(n: int, m: int, rng: random.Random, edges: int | None = None) -> list[Request]:
    """``m`` requests drawn from the edges of a hidden random line.

    The hidden line is a uniformly random ordering of the nodes; ``edges``
    (default ``n - 1``) of its edges are eligible, so the request graph is
    always a disjoint union of paths.  Each request picks an eligible edge
    and an orientation uniformly.
    """
    if n < 2:
        raise UsageError("random line demand needs n >= 2")
    hidden = list(range(n))
    rng.shuffle(hidden)
    line = [(hidden[i], hidden[i + 1]) for i in range(n - 1)]
    if edges is not None:
        if not 1 <= edges <= n - 1:
            raise UsageError("edges must be in 1..n-1")
        line = rng.sample(line, edges)
    out = []
    for _ in range(m):
        u, v = rng.choice(line)
        out.append(Request(u, v) if rng.random() < 0.5 else Request(v, u))
    return out


def read_sequence(fh: TextIO) -> list[Request]:
    """One request per line, ``u v`` as integers; blank and ``#`` lines skipped."""
    out = []
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise UsageError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
        if u == v or u < 0 or v < 0:
            raise UsageError(f"line {lineno}: invalid request ({u}, {v})")
        out.append(Request(u, v))
    return out


def write_sequence(fh: TextIO, sigma: Iterable) -> None:
    for u, v in sigma:
        fh.write(f"{u} {v}\n")
