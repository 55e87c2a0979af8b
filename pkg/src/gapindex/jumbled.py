"""Jumbled (histogram) indexing for constant-size alphabets.

A query histogram P matches substring S[i..j] when the letter counts agree
exactly. The index encodes every prefix histogram and every suffix
histogram positionally (base n + 1, so coordinate sums of one prefix and
one suffix never overflow a digit), merges the two sets into a single
3SUM-with-reporting instance, and answers a query P by asking for pair
sums equal to the encoding of h(S) - P. A decoded (prefix, suffix) pair is
kept only when the lengths are consistent (prefix + match + suffix covers
the string exactly), which also rejects the rare positional-carry artifact
where a scalar sum matches without the digit vectors matching.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from .backends import DEFAULT_MEM_BUDGET, BackendKind, LinearScan
from .errors import FormatError, GuardError
from .reporting import ThreeSumReporting

_ENCODE_BITS = 120
MAX_SIGMA = 8

Symbol = Union[str, int]


def histogram(s: Iterable[Symbol], alphabet: Sequence[Symbol]) -> tuple[int, ...]:
    """Letter-count vector of s over the given alphabet order."""
    index = {ch: t for t, ch in enumerate(alphabet)}
    counts = [0] * len(alphabet)
    for ch in s:
        if ch not in index:
            raise FormatError(f"symbol {ch!r} not in alphabet {list(alphabet)!r}")
        counts[index[ch]] += 1
    return tuple(counts)


def _check_encode_guard(base: int, dim: int) -> None:
    if base ** dim > 1 << _ENCODE_BITS:
        import math

        bits = math.ceil(dim * math.log2(base))
        raise GuardError(
            f"encoding {dim} coordinates in base {base} needs ~{bits} bits,"
            f" over the {_ENCODE_BITS}-bit guard"
        )


def encode_vector(v: Sequence[int], base: int, dim: int) -> int:
    """Positional encoding sum(v[t] * base^t); injective for coordinates < base."""
    if len(v) != dim:
        raise FormatError(f"expected {dim} coordinates, got {len(v)}")
    _check_encode_guard(base, dim)
    out = 0
    for t in range(dim - 1, -1, -1):
        if not 0 <= v[t] < base:
            raise GuardError(f"coordinate {v[t]} outside [0, {base})")
        out = out * base + v[t]
    return out


def decode_vector(x: int, base: int, dim: int) -> tuple[int, ...]:
    out = []
    for _ in range(dim):
        x, digit = divmod(x, base)
        out.append(digit)
    if x:
        raise FormatError(f"value has more than {dim} base-{base} digits")
    return tuple(out)


class JumbledIndex:
    """Reporting structure over encoded prefix and suffix histograms."""

    def __init__(
        self,
        text: Sequence[Symbol],
        alphabet: Sequence[Symbol],
        kind: Optional[BackendKind] = None,
        mem_budget: int = DEFAULT_MEM_BUDGET,
    ):
        self.alphabet = tuple(sorted(set(alphabet)))
        self.sigma = len(self.alphabet)
        if self.sigma > MAX_SIGMA:
            raise GuardError(
                f"alphabet size {self.sigma} over the cap {MAX_SIGMA}: the encoded"
                f" universe grows as (n+1)^sigma and would leave the 120-bit guard"
            )
        self.text = text
        self.n = len(text)
        self.base = self.n + 1
        _check_encode_guard(self.base, self.sigma)
        self.total = histogram(text, self.alphabet)

        index = {ch: t for t, ch in enumerate(self.alphabet)}
        running = [0] * self.sigma
        prefix_enc = [0]  # empty prefix
        for ch in text:
            running[index[ch]] += 1
            prefix_enc.append(encode_vector(running, self.base, self.sigma))
        running = [0] * self.sigma
        suffix_enc = [0]  # empty suffix, start n + 1
        for ch in reversed(text):
            running[index[ch]] += 1
            suffix_enc.append(encode_vector(running, self.base, self.sigma))
        suffix_enc.reverse()  # suffix_enc[t] is the histogram of S[t+1..n]

        # Shift encodings by +1 into {1..u'}; norms strictly increase along
        # prefixes (and suffixes), so both decode tables are injective.
        self.prefix_of = {enc + 1: p for p, enc in enumerate(prefix_enc)}
        self.suffix_of = {enc + 1: q + 1 for q, enc in enumerate(suffix_enc)}
        a_store = sorted(self.prefix_of)
        b_store = sorted(self.suffix_of)
        self.u_prime = max(a_store[-1], b_store[-1])
        from .reductions import merge_two_set_3sum

        self.merged = merge_two_set_3sum(a_store, b_store, self.u_prime)
        self.reporting = ThreeSumReporting(list(self.merged.values), kind or LinearScan(), mem_budget)

    def _decode_occurrence(self, pair: tuple[int, int], norm: int) -> Optional[tuple[int, int]]:
        sides = [self.merged.decode(v) for v in pair]
        by_kind = {kind: value for kind, value in sides}
        if len(by_kind) != 2:
            return None
        p = self.prefix_of[by_kind["A"]]
        q = self.suffix_of[by_kind["B"]]
        # Length consistency: prefix + occurrence + suffix must tile S.
        if p + norm + (self.n - q + 1) != self.n:
            return None
        return (p + 1, q - 1)

    def _query_value(self, pattern: Sequence[int]) -> Optional[tuple[int, int]]:
        if len(pattern) != self.sigma:
            raise FormatError(f"pattern histogram must have {self.sigma} coordinates")
        rest = []
        for have, want in zip(self.total, pattern):
            if want < 0:
                raise FormatError(f"negative count {want} in pattern histogram")
            if have < want:
                return None
            rest.append(have - want)
        norm = sum(pattern)
        if norm == 0:
            return None  # empty substrings are not occurrences
        c_store = encode_vector(rest, self.base, self.sigma) + 2
        value = self.merged.query_value(c_store)
        if value is None:
            return None
        return value, norm

    def exists(self, pattern: Sequence[int]) -> bool:
        prepared = self._query_value(pattern)
        if prepared is None:
            return False
        value, norm = prepared
        hit = self.reporting.exists(value)
        if hit is None:
            return False
        if self._decode_occurrence(hit, norm) is not None:
            return True
        # The certificate was a carry artifact; fall back to the full list.
        return bool(self.report(pattern))

    def report(self, pattern: Sequence[int]) -> list[tuple[int, int]]:
        prepared = self._query_value(pattern)
        if prepared is None:
            return []
        value, norm = prepared
        out = []
        for pair in self.reporting.report(value):
            occ = self._decode_occurrence(pair, norm)
            if occ is not None:
                out.append(occ)
        return sorted(out)


def build_jumbled_index(
    text: Sequence[Symbol],
    alphabet: Sequence[Symbol],
    kind: Optional[BackendKind] = None,
    mem_budget: int = DEFAULT_MEM_BUDGET,
) -> JumbledIndex:
    return JumbledIndex(text, alphabet, kind, mem_budget)


def sliding_window_matches(
    text: Sequence[Symbol], alphabet: Sequence[Symbol], pattern: Sequence[int]
) -> list[tuple[int, int]]:
    """Oracle: all substrings with the pattern histogram, by a rolling window."""
    alpha = tuple(sorted(set(alphabet)))
    index = {ch: t for t, ch in enumerate(alpha)}
    norm = sum(pattern)
    n = len(text)
    if norm == 0 or norm > n:
        return []
    counts = [0] * len(alpha)
    for ch in text[:norm]:
        counts[index[ch]] += 1
    out = []
    target = list(pattern)
    if counts == target:
        out.append((1, norm))
    for start in range(1, n - norm + 1):
        counts[index[text[start - 1]]] -= 1
        counts[index[text[start + norm - 1]]] += 1
        if counts == target:
            out.append((start + 1, start + norm))
    return out
