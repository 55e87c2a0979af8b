#!/usr/bin/env python3
"""Reporting every witness pair via dyadic splitting.

Existence backends return one pair per query. To report all of them, the
index also stores every dyadic rank block of every set. Each found witness
splits the search into strictly-smaller and strictly-larger halves, the
halves decompose into a logarithmic number of stored blocks, and only
block pairs whose shifted value ranges still overlap are visited again.
"""

from gapindex import (
    LinearScan,
    build_reporting_index,
    cover_rank_range,
    dyadic_subsets,
    ingest_collection,
    report_3sum,
    report_shift,
)

values = [4, 9, 11, 15, 20, 26, 31, 40, 47, 52, 58, 63, 70]
collection = ingest_collection([values, [v + 7 for v in values[:9]] + [99, 104]], u=120)
s1 = collection.set(1)

print("dyadic blocks of S_1 (rank ranges):")
for sub in dyadic_subsets(s1):
    print(f"  level {sub.level} block {sub.block}: ranks [{sub.rank_lo}, {sub.rank_hi}]"
          f" values [{sub.min_value}, {sub.max_value}]")

print("\ncover of ranks [2, 11]:",
      [(c.rank_lo, c.rank_hi) for c in cover_rank_range(s1, 2, 11)])

idx = build_reporting_index(collection, LinearScan())
print("\nindex holds", len(idx.backend.sets), "sets,",
      idx.total_elements, "stored elements",
      f"(base {idx.base_elements} + dyadic {idx.dyadic_elements})")

pairs = report_shift(idx, 1, 2, 7)
print("\nall pairs at shift 7:", pairs)
print("existence queries spent:", idx.last_query_calls,
      "for", len(pairs), "pairs")

pairs = report_shift(idx, 1, 2, 1)
print("pairs at shift 1:", pairs, "- queries:", idx.last_query_calls)

# The same recursion powers 3SUM reporting: all unordered pairs summing to c.
print("\npairs in {1..10} summing to 11:", report_3sum(list(range(1, 11)), 11))
