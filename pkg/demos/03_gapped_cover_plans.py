#!/usr/bin/env python3
"""Interval-of-shifts queries and the plans that answer them.

A gapped query accepts any shift inside [lo, hi]. Instead of asking one
exact query per shift, the planner mixes a few exact point queries with
leveled approximate queries on quotient sets (elements divided by a power
of two). Every approximate query has a guaranteed detection zone and a
wider "may answer either way" zone; the plan tiles the interval with
detection zones while keeping all uncertainty inside the interval, so YES
answers are always safe to trust.
"""

from gapindex import (
    LinearScan,
    build_gapped_index,
    gapped_exists,
    gapped_report,
    ingest_collection,
    plan_cover,
)

plan = plan_cover(10, 20)
print(plan.describe())
print("covered:", sorted(plan.covered_points() & set(range(10, 21))) == list(range(10, 21)))
print("uncertainty stays inside:", plan.uncertain_points() <= set(range(10, 21)))

print("\na wide interval needs only logarithmically many queries:")
for lo, hi in ((0, 100), (50, 1000), (7, 7)):
    plan = plan_cover(lo, hi)
    print(f"  [{lo}, {hi}]: {len(plan.point_shifts)} point + "
          f"{len(plan.approx_queries)} approximate queries")

collection = ingest_collection(
    [[2, 31, 77, 140, 205], [9, 60, 150, 260, 300]], u=320
)
index = build_gapped_index(collection, LinearScan())
print("\nindex levels:", index.max_level,
      "- stored elements:", index.total_elements)

for lo, hi in ((0, 10), (25, 60), (100, 119), (200, 319)):
    witness = gapped_exists(index, 1, 2, lo, hi)
    pairs = gapped_report(index, 1, 2, lo, hi)
    print(f"gaps [{lo:>3}, {hi:>3}]: witness={witness} all={pairs}"
          f" (plan {index.last_plan_size} queries)")
