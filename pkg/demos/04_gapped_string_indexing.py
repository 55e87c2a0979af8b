#!/usr/bin/env python3
"""Gapped string indexing end to end.

Two patterns and a gap range come in; position pairs (i, j) with the gap
j - i inside the range come out. The index covers the suffix array with
dyadic intervals, treats each interval's slice of starting positions as a
set, and routes queries through the gapped set intersection machinery.
Both baselines answer the same queries independently.
"""

from gapindex import (
    LinearScan,
    QuadraticBaseline,
    baseline_linear_scan,
    build_gapped_string_index,
    build_suffix_array,
    pattern_interval,
)

# A motif hunt: two conserved sites separated by a variable spacer.
text = b"acgtacgtTATAacgtacgCCGGtacgTATAttacgCCGGacgtTATAcgCCGG"
print("text length:", len(text))

sa = build_suffix_array(text)
print("suffix array head:", sa.sa[:8])
s, e = pattern_interval(sa, b"TATA")
print("TATA occurs at:", sorted(sa.sa[s - 1 : e - 1]))
s, e = pattern_interval(sa, b"CCGG")
print("CCGG occurs at:", sorted(sa.sa[s - 1 : e - 1]))

index = build_gapped_string_index(text, LinearScan())
print("\nindex: dyadic interval sets hold", index.set_elements, "positions;",
      "whole structure stores", index.gapped.total_elements, "elements")

for lo, hi in ((0, 12), (8, 20), (40, 53)):
    pairs = index.report(b"TATA", b"CCGG", lo, hi)
    print(f"TATA ... CCGG with gap in [{lo}, {hi}]: {pairs}")

pairs = index.report(b"TATA", b"CCGG", 8, 20)
check = baseline_linear_scan(text, b"TATA", b"CCGG", 8, 20)
quad = QuadraticBaseline(text).query(b"TATA", b"CCGG", 8, 20)
print("\nbaselines agree:", pairs == check == quad)

stats = {}
baseline_linear_scan(text, b"TATA", b"CCGG", 8, 20, stats=stats)
print("two-finger scan visits:", stats["position_scans"], "positions")

witness = index.exists(b"acgt", b"acgt", 4, 4)
print("\nfirst acgt pair at distance 4:", witness)
