"""Certificate-returning shifted set intersection backends.

Three interchangeable backends answer "is there a in S_i, b in S_j with
a + s = b?" and, on YES, return the witness pair with the smallest a:

* ``LinearScan``     -- membership sets only; probes the smaller set.
* ``FullTabulation`` -- one certificate per (i, j, realized shift).
* ``SmallUniverse``  -- tabulates large-set pairs, probes otherwise.

All backends are immutable after build apart from cheap instrumentation
counters; queries are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import BudgetError, FormatError
from .sets import SetCollection

# Nominal per-entry accounting used for space instrumentation: one stored
# integer is 8 bytes, one tabulated certificate (shift -> pair) is 24.
_INT_BYTES = 8
_CERT_BYTES = 24

DEFAULT_MEM_BUDGET = 1 << 30

# numpy fast paths require differences to stay inside int64.
_NP_SAFE = 1 << 62


@dataclass(frozen=True)
class LinearScan:
    name = "linear"


@dataclass(frozen=True)
class FullTabulation:
    name = "fulltab"


@dataclass(frozen=True)
class SmallUniverse:
    delta: float
    name = "smalluniverse"


BackendKind = Union[LinearScan, FullTabulation, SmallUniverse]


@dataclass(frozen=True)
class ShiftQuery:
    i: int
    j: int
    s: int


@dataclass(frozen=True)
class ShiftCertificate:
    a: int
    b: int


def parse_backend(name: str, delta: float = 0.5) -> BackendKind:
    if name == "linear":
        return LinearScan()
    if name == "fulltab":
        return FullTabulation()
    if name == "smalluniverse":
        if not 0.0 <= delta <= 1.0:
            raise ValueError(f"delta must be in [0, 1], got {delta}")
        return SmallUniverse(delta=delta)
    raise ValueError(f"unknown backend {name!r} (linear, fulltab, smalluniverse)")


def _as_element_lists(c: Union[SetCollection, Sequence[tuple[int, ...]]]) -> list[tuple[int, ...]]:
    if isinstance(c, SetCollection):
        return [s.elements for s in c.sets]
    return [tuple(s) for s in c]


def _np_safe(sets: list[tuple[int, ...]]) -> bool:
    return all(-_NP_SAFE < s[0] and s[-1] < _NP_SAFE for s in sets if s)


def _pair_shift_certs(sa: tuple[int, ...], sb: tuple[int, ...], use_np: bool):
    """All realized shifts b - a over sa x sb with the smallest-a certificate each.

    Returns (shifts ascending, a-values) as parallel sequences.
    """
    if use_np and len(sa) * len(sb) >= 64:
        aa = np.asarray(sa, dtype=np.int64)
        bb = np.asarray(sb, dtype=np.int64)
        # Row-major flattening makes the first occurrence of a shift the one
        # with the smallest a, which np.unique's return_index picks out.
        diffs = (bb[None, :] - aa[:, None]).ravel()
        shifts, first = np.unique(diffs, return_index=True)
        return shifts, aa[first // len(bb)]
    table: dict[int, int] = {}
    for a in sa:
        for b in sb:
            table.setdefault(b - a, a)
    shifts = sorted(table)
    return shifts, [table[s] for s in shifts]


class _TabulatedPairs:
    """Shared (i, j) -> sorted shift table with smallest-a certificates."""

    __slots__ = ("_table", "entries")

    def __init__(self) -> None:
        self._table: dict[tuple[int, int], tuple] = {}
        self.entries = 0

    def add_pair(self, i: int, j: int, sa, sb, use_np: bool) -> None:
        shifts, avals = _pair_shift_certs(sa, sb, use_np)
        self._table[(i, j)] = (shifts, avals)
        self.entries += len(shifts)

    def lookup(self, i: int, j: int, s: int) -> Optional[ShiftCertificate]:
        entry = self._table.get((i, j))
        if entry is None:
            return None
        shifts, avals = entry
        if isinstance(shifts, np.ndarray):
            pos = int(np.searchsorted(shifts, s))
            if pos < len(shifts) and int(shifts[pos]) == s:
                a = int(avals[pos])
                return ShiftCertificate(a, a + s)
            return None
        from bisect import bisect_left

        pos = bisect_left(shifts, s)
        if pos < len(shifts) and shifts[pos] == s:
            a = avals[pos]
            return ShiftCertificate(a, a + s)
        return None


def _probe(sa: tuple[int, ...], member_b: frozenset, s: int, counter) -> Optional[ShiftCertificate]:
    """Scan the a-side in ascending order against a membership set."""
    n = 0
    for a in sa:
        n += 1
        if a + s in member_b:
            counter(n)
            return ShiftCertificate(a, a + s)
    counter(n)
    return None


class SsiBackend:
    """Common query surface; concrete backends fill in ``_exists``."""

    kind: BackendKind

    def __init__(self, sets: list[tuple[int, ...]]):
        self.sets = sets
        self.probes = 0

    def _check_pair(self, i: int, j: int) -> None:
        if not (1 <= i <= len(self.sets) and 1 <= j <= len(self.sets)):
            raise FormatError(
                f"set indices ({i}, {j}) out of range 1..{len(self.sets)}"
            )

    def _count(self, n: int) -> None:
        self.probes += n

    def exists(self, i: int, j: int, s: int) -> Optional[ShiftCertificate]:
        """Smallest-a certificate for a + s = b over sets i, j, or None."""
        raise NotImplementedError

    def space_bytes(self) -> int:
        raise NotImplementedError


class _LinearBackend(SsiBackend):
    def __init__(self, sets, kind: LinearScan):
        super().__init__(sets)
        self.kind = kind
        self.members = [frozenset(s) for s in sets]
        self.dict_entries = sum(len(m) for m in self.members)

    def exists(self, i, j, s):
        self._check_pair(i, j)
        sa, sb = self.sets[i - 1], self.sets[j - 1]
        if len(sa) <= len(sb):
            return _probe(sa, self.members[j - 1], s, self._count)
        # Probe the smaller b-side; a = b - s still comes out ascending.
        n = 0
        member_a = self.members[i - 1]
        for b in sb:
            n += 1
            if b - s in member_a:
                self._count(n)
                return ShiftCertificate(b - s, b)
        self._count(n)
        return None

    def space_bytes(self):
        return self.dict_entries * _INT_BYTES


class _FullTabBackend(SsiBackend):
    def __init__(self, sets, kind: FullTabulation, mem_budget: int):
        super().__init__(sets)
        self.kind = kind
        span = _shift_span(sets)
        estimate = sum(
            min(len(a) * len(b), span) for a in sets for b in sets
        )
        _check_budget("fulltab", estimate * _CERT_BYTES, mem_budget)
        use_np = _np_safe(sets)
        self.table = _TabulatedPairs()
        for i, sa in enumerate(sets, start=1):
            for j, sb in enumerate(sets, start=1):
                self.table.add_pair(i, j, sa, sb, use_np)

    def exists(self, i, j, s):
        self._check_pair(i, j)
        return self.table.lookup(i, j, s)

    def space_bytes(self):
        return self.table.entries * _CERT_BYTES


class _SmallUniverseBackend(SsiBackend):
    def __init__(self, sets, kind: SmallUniverse, mem_budget: int):
        super().__init__(sets)
        self.kind = kind
        total = sum(len(s) for s in sets)
        # "Large" is strictly above ceil(N^delta); everything else probes.
        self.threshold = _ceil_pow(total, kind.delta)
        self.large = [len(s) > self.threshold for s in sets]
        span = _shift_span(sets)
        estimate = sum(
            min(len(a) * len(b), span)
            for ia, a in enumerate(sets)
            if self.large[ia]
            for ib, b in enumerate(sets)
            if self.large[ib]
        )
        _check_budget("smalluniverse", estimate * _CERT_BYTES, mem_budget)
        self.members = [frozenset(s) for s in sets]
        self.dict_entries = sum(len(m) for m in self.members)
        use_np = _np_safe(sets)
        self.table = _TabulatedPairs()
        for i, sa in enumerate(sets, start=1):
            if not self.large[i - 1]:
                continue
            for j, sb in enumerate(sets, start=1):
                if self.large[j - 1]:
                    self.table.add_pair(i, j, sa, sb, use_np)

    def exists(self, i, j, s):
        self._check_pair(i, j)
        if self.large[i - 1] and self.large[j - 1]:
            return self.table.lookup(i, j, s)
        sa, sb = self.sets[i - 1], self.sets[j - 1]
        if len(sa) <= len(sb):
            return _probe(sa, self.members[j - 1], s, self._count)
        n = 0
        member_a = self.members[i - 1]
        for b in sb:
            n += 1
            if b - s in member_a:
                self._count(n)
                return ShiftCertificate(b - s, b)
        self._count(n)
        return None

    def space_bytes(self):
        return self.dict_entries * _INT_BYTES + self.table.entries * _CERT_BYTES


def _ceil_pow(total: int, delta: float) -> int:
    if total <= 0:
        return 0
    import math

    t = math.ceil(total**delta)
    # Guard against float rounding just above an exact power.
    while t > 1 and (t - 1) >= total**delta:
        t -= 1
    return t


def _shift_span(sets: list[tuple[int, ...]]) -> int:
    nonempty = [s for s in sets if s]
    if not nonempty:
        return 1
    lo = min(s[0] for s in nonempty)
    hi = max(s[-1] for s in nonempty)
    return 2 * (hi - lo) + 1


def _check_budget(what: str, estimated_bytes: int, mem_budget: int) -> None:
    if estimated_bytes > mem_budget:
        raise BudgetError(
            f"{what} build needs ~{estimated_bytes} bytes, over budget {mem_budget}"
        )


def build_backend(
    c: Union[SetCollection, Sequence[tuple[int, ...]]],
    kind: BackendKind,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> SsiBackend:
    """Build the requested backend over a collection or raw sorted sets."""
    sets = _as_element_lists(c)
    if isinstance(kind, LinearScan):
        return _LinearBackend(sets, kind)
    if isinstance(kind, FullTabulation):
        return _FullTabBackend(sets, kind, mem_budget)
    if isinstance(kind, SmallUniverse):
        return _SmallUniverseBackend(sets, kind, mem_budget)
    raise ValueError(f"unsupported backend kind {kind!r}")


def ssi_exists(backend: SsiBackend, q: ShiftQuery) -> Optional[ShiftCertificate]:
    return backend.exists(q.i, q.j, q.s)


def brute_force_ssi(
    c: Union[SetCollection, Sequence[tuple[int, ...]]], q: ShiftQuery
) -> list[tuple[int, int]]:
    """Reference oracle: every (a, b) with a + s = b, sorted by a."""
    sets = _as_element_lists(c)
    sa, sb = sets[q.i - 1], sets[q.j - 1]
    member_b = set(sb)
    return [(a, a + q.s) for a in sa if a + q.s in member_b]
