"""Seeded random instance generators shared by tests, verify, bench and gen."""

from __future__ import annotations

import random

from .sets import SetCollection, ingest_collection


def random_collection(
    rng: random.Random,
    k: int,
    total: int,
    u: int,
    sizes: list[int] | None = None,
) -> SetCollection:
    """k random sets with roughly `total` elements over {1..u}."""
    if sizes is None:
        cuts = sorted(rng.randint(1, total) for _ in range(k - 1)) if k > 1 else []
        bounds = [0] + cuts + [total]
        sizes = [max(1, bounds[t + 1] - bounds[t]) for t in range(k)]
    raw = [[rng.randint(1, u) for _ in range(size)] for size in sizes]
    return ingest_collection(raw, u)


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    """Random text over the first sigma lowercase letters."""
    return bytes(rng.randint(97, 96 + sigma) for _ in range(n))


def random_pattern_from(rng: random.Random, text: bytes, max_len: int) -> bytes:
    """A pattern sampled from the text so queries usually have occurrences."""
    n = len(text)
    length = rng.randint(1, min(max_len, n))
    start = rng.randint(0, n - length)
    return text[start : start + length]
