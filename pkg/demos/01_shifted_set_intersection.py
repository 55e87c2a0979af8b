#!/usr/bin/env python3
"""Shifted set intersection: query backends and the 3SUM connection.

A collection of sorted integer sets answers "does S_i shifted by s hit
S_j?" with a witness pair. Three backends trade space for probes; the
same question can also round-trip through a single 3SUM instance.
"""

from gapindex import (
    FullTabulation,
    LinearScan,
    ShiftQuery,
    SmallUniverse,
    brute_force_ssi,
    build_backend,
    ingest_collection,
    reduce_3sum_to_ssi,
    reduce_ssi_to_3sum,
)

collection = ingest_collection(
    [[3, 8, 15, 21], [5, 10, 17, 23], [4, 7, 30]], u=32
)
print("collection: k =", collection.k, " N =", collection.total_size)

for kind in (LinearScan(), FullTabulation(), SmallUniverse(delta=0.5)):
    backend = build_backend(collection, kind)
    cert = backend.exists(1, 2, 2)
    print(f"{kind.name:>14}: shift 2 from S_1 to S_2 ->", (cert.a, cert.b))
    print(f"{'':>14}  space accounting = {backend.space_bytes()} bytes")

print("\nall witnesses for shift 2:", brute_force_ssi(collection, ShiftQuery(1, 2, 2)))
print("shift 100 has none:", brute_force_ssi(collection, ShiftQuery(1, 2, 100)))

# A 3SUM question "which a, b in A sum to c?" is one shifted-intersection
# query in disguise: keep A, negate it into a second set, ask for shift c.
A = [2, 3, 9, 11]
pair_collection, to_ssi = reduce_3sum_to_ssi(A)
backend = build_backend(pair_collection, LinearScan())
for c in (5, 14, 7):
    q = to_ssi.query(c)
    cert = backend.exists(q.i, q.j, q.s)
    answer = to_ssi.decode(cert.a, cert.b) if cert else "NO"
    print(f"3SUM query c={c}:", answer)

# And the other way: the whole collection packs into one 3SUM instance
# whose universe grows by a factor of about k^2.
instance, to_3sum = reduce_ssi_to_3sum(collection)
print("\npacked 3SUM instance: |A| =", len(instance.A), " universe <", instance.universe_bound)
encoded = to_3sum.query(1, 2, 2)
pair = instance.query(encoded)
print("query (1, 2, shift 2) maps to c =", encoded, "->", to_3sum.decode_pair(*pair))
