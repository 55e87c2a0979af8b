#!/usr/bin/env python3
"""Two more consumers of the same machinery.

Jumbled indexing finds substrings by letter histogram instead of exact
text: prefix and suffix histograms are positionally encoded into one
3SUM-with-reporting instance, and a query histogram P turns into the pair
sum h(text) - P. Smallest-shift answers "how far must S_i slide right to
first hit S_j?" with tabulated large-pair answers and probed small sets.
"""

from gapindex import (
    build_jumbled_index,
    build_smallest_shift,
    histogram,
    ingest_collection,
    sliding_window_matches,
    smallest_shift,
)

text = "acaacabd"
print("text:", text)
print("histogram over abcd:", histogram(text, "abcd"))

index = build_jumbled_index(text, "abcd")
for pattern in ((4, 1, 2, 1), (2, 0, 1, 0), (1, 1, 0, 0), (0, 0, 0, 9)):
    found = index.report(pattern)
    print(f"substrings with histogram {pattern}: {found}")
    assert found == sliding_window_matches(text, index.alphabet, pattern)

print("\nanagram search: where does 'caa' occur in any order?")
print(" ->", index.report(histogram("caa", index.alphabet)))

collection = ingest_collection(
    [[3, 19, 42, 77], [5, 18, 44, 80], [90, 95], [1, 2]], u=100
)
shifts = build_smallest_shift(collection)
print("\nsmallest nonnegative shifts between sets:")
for i in range(1, 5):
    row = [smallest_shift(shifts, i, j) for j in range(1, 5)]
    print(f"  from S_{i}:", ["-" if s is None else s for s in row])
print("(a '-' means the target set lies entirely below the source)")
