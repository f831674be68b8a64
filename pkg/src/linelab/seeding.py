"""Seed splitting.

A single 64-bit master seed is expanded into independent per-component
streams: the stream for component ``name`` is seeded with the first 8 bytes
of ``blake2b(f"{seed}/{name}")``.  Adding a new component never perturbs the
streams of existing ones.
"""

from __future__ import annotations

import hashlib
import os
import random

ENV_SEED = "LINELAB_SEED"
DEFAULT_SEED = 0


def default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


def derive(seed: int, name: str) -> int:
    digest = hashlib.blake2b(f"{int(seed)}/{name}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def stream(seed: int, name: str) -> random.Random:
    return random.Random(derive(seed, name))
