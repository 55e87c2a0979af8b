"""Sorted integer-set collections and the dyadic decomposition machinery.

Everything downstream (shift queries, reporting, gapped queries, the string
index) is built on two primitives defined here: partitioning a sorted set
into dyadic rank blocks, and covering an arbitrary rank or value range by
at most 2*ceil(log2 m) + 1 of those blocks.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .errors import FormatError, GuardError

# Ingestion cap: keeps every derived quantity (negated elements, offsets up
# to ~4*k^2*u in the 3SUM mapping) comfortably inside 63 bits.
MAX_UNIVERSE = 1 << 40


@dataclass(frozen=True)
class IntSet:
    """A strictly increasing tuple of integers with its 1-based collection id."""

    id: int
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def min_value(self) -> int:
        return self.elements[0]

    @property
    def max_value(self) -> int:
        return self.elements[-1]

    def rank_range_of_values(self, lo: int, hi: int) -> tuple[int, int]:
        """1-based rank interval of elements in [lo, hi]; empty if rlo > rhi."""
        rlo = bisect_left(self.elements, lo) + 1
        rhi = bisect_right(self.elements, hi)
        return rlo, rhi


@dataclass(frozen=True)
class SetCollection:
    """k sorted sets over universe {1..u}; set ids are 1-based."""

    sets: tuple[IntSet, ...]
    universe: int

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def total_size(self) -> int:
        return sum(len(s) for s in self.sets)

    def set(self, i: int) -> IntSet:
        if not 1 <= i <= len(self.sets):
            raise FormatError(f"set index {i} out of range 1..{len(self.sets)}")
        return self.sets[i - 1]


@dataclass(frozen=True)
class DyadicSubset:
    """Elements of a parent set whose ranks form the block [kappa*2^j+1, (kappa+1)*2^j]."""

    parent_id: int
    level: int
    block: int
    rank_lo: int
    rank_hi: int
    min_value: int
    max_value: int

    @property
    def size(self) -> int:
        return self.rank_hi - self.rank_lo + 1


@dataclass(frozen=True)
class DyadicInterval:
    """Position interval [1+kappa*2^j, (kappa+1)*2^j]."""

    level: int
    block: int
    lo: int
    hi: int


def ingest_collection(raw: list[list[int]], u: int) -> SetCollection:
    """Sort, dedupe and validate raw sets against universe {1..u}."""
    if u < 1:
        raise GuardError(f"universe size must be >= 1, got {u}")
    if u > MAX_UNIVERSE:
        raise GuardError(f"universe size {u} exceeds the 2^40 guard")
    sets = []
    for idx, values in enumerate(raw, start=1):
        if not values:
            raise FormatError(f"set {idx} is empty")
        for v in values:
            if not 1 <= v <= u:
                raise FormatError(f"set {idx}: value {v} outside universe 1..{u}")
        sets.append(IntSet(id=idx, elements=tuple(sorted(set(values)))))
    return SetCollection(sets=tuple(sets), universe=u)


def max_cover_blocks(m: int) -> int:
    """Upper bound 2*ceil(log2 m) + 1 on the size of any greedy dyadic cover."""
    return 2 * max(m - 1, 0).bit_length() + 1


def _cover_rank_blocks(lo: int, hi: int) -> list[tuple[int, int, int, int]]:
    """Greedy left-to-right dyadic cover of ranks [lo, hi] on the absolute grid.

    At rank r takes the largest block aligned at r (r = kappa*2^j + 1) that
    still fits inside [lo, hi]. Returns (level, block, rank_lo, rank_hi).
    """
    out = []
    r = lo
    while r <= hi:
        fit = (hi - r + 1).bit_length() - 1
        align = ((r - 1) & -(r - 1)).bit_length() - 1 if r > 1 else fit
        j = min(fit, align)
        out.append((j, (r - 1) >> j, r, r + (1 << j) - 1))
        r += 1 << j
    return out


def _subset(s: IntSet, level: int, block: int, rlo: int, rhi: int) -> DyadicSubset:
    return DyadicSubset(
        parent_id=s.id,
        level=level,
        block=block,
        rank_lo=rlo,
        rank_hi=rhi,
        min_value=s.elements[rlo - 1],
        max_value=s.elements[rhi - 1],
    )


def dyadic_subsets(s: IntSet) -> list[DyadicSubset]:
    """All dyadic rank blocks of s, for j = 0..floor(log2 m)."""
    m = len(s)
    if m == 0:
        raise FormatError("cannot decompose an empty set")
    out = []
    for j in range(m.bit_length()):
        size = 1 << j
        for kappa in range(m // size):
            rlo = kappa * size + 1
            out.append(_subset(s, j, kappa, rlo, rlo + size - 1))
    return out


def cover_rank_range(s: IntSet, lo: int, hi: int) -> list[DyadicSubset]:
    """Disjoint dyadic blocks whose union is exactly ranks [lo, hi] of s."""
    if not 1 <= lo <= hi <= len(s):
        raise FormatError(f"invalid rank range [{lo}, {hi}] for set of size {len(s)}")
    return [_subset(s, j, k, rlo, rhi) for j, k, rlo, rhi in _cover_rank_blocks(lo, hi)]


def cover_value_range(s: IntSet, a: int, b: int) -> list[DyadicSubset]:
    """Dyadic cover of the elements of s lying in [a, b]; [] when none do."""
    if a > b:
        raise FormatError(f"invalid value range [{a}, {b}]")
    rlo, rhi = s.rank_range_of_values(a, b)
    if rlo > rhi:
        return []
    return cover_rank_range(s, rlo, rhi)


def dyadic_intervals(n: int) -> list[DyadicInterval]:
    """All dyadic position intervals with endpoints inside [1, n]."""
    if n < 1:
        raise FormatError(f"need n >= 1, got {n}")
    out = []
    for j in range(n.bit_length()):
        size = 1 << j
        for kappa in range(n // size):
            lo = kappa * size + 1
            out.append(DyadicInterval(level=j, block=kappa, lo=lo, hi=lo + size - 1))
    return out


def parse_collection(text: str) -> SetCollection:
    """Parse the set-collection text format: first line "u k", then one set per line.

    Parsing is strict: exactly k set lines, integers only, no trailing tokens.
    """
    lines = text.splitlines()
    stripped = [ln.strip() for ln in lines]
    if not stripped or not stripped[0]:
        raise FormatError("missing header line 'u k'")
    head = stripped[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'u k', got {stripped[0]!r}")
    try:
        u, k = int(head[0]), int(head[1])
    except ValueError as e:
        raise FormatError(f"bad header {stripped[0]!r}: {e}") from None
    if k < 1:
        raise FormatError(f"need at least one set, got k={k}")
    if len(stripped) < 1 + k:
        raise FormatError(f"expected {k} set lines, found {len(stripped) - 1}")
    for extra in stripped[1 + k:]:
        if extra:
            raise FormatError(f"trailing content after {k} set lines: {extra!r}")
    raw = []
    for idx in range(1, 1 + k):
        try:
            raw.append([int(tok) for tok in stripped[idx].split()])
        except ValueError as e:
            raise FormatError(f"set line {idx}: {e}") from None
    return ingest_collection(raw, u)


def format_collection(c: SetCollection) -> str:
    lines = [f"{c.universe} {c.k}"]
    lines.extend(" ".join(str(v) for v in s.elements) for s in c.sets)
    return "\n".join(lines) + "\n"
