"""Benchmark harness: build sizes, probe counters and query latency.

A bench spec is a JSON object with optional keys:

* ``"ssi"``: list of {"N", "u", "sizes"?, "k"?, "backend", "delta"?,
  "queries", "seed"} entries. Entries sharing N/u/sizes/seed reuse the
  same instance and query stream, so a delta grid measures the space/probe
  trade-off on identical inputs.
* ``"gapped_string"``: list of {"n", "sigma", "backend", "delta"?,
  "queries", "seed"} entries.

Each entry yields one line-delimited JSON record. Budget overruns are
recorded in the record, not fatal.
"""

from __future__ import annotations

import random
import time
from typing import Iterator

from .backends import DEFAULT_MEM_BUDGET, build_backend, parse_backend
from .errors import BudgetError
from .generators import random_collection, random_pattern_from, random_text
from .textindex import build_gapped_string_index


def _sizes_from_spec(entry: dict) -> list[int] | None:
    if "sizes" in entry:
        # [[count, size], ...] pairs, e.g. [[20, 40], [20, 460]].
        out = []
        for count, size in entry["sizes"]:
            out.extend([size] * count)
        return out
    return None


def _ssi_record(entry: dict, mem_budget: int) -> dict:
    seed = entry.get("seed", 0)
    u = entry["u"]
    sizes = _sizes_from_spec(entry)
    k = len(sizes) if sizes else entry.get("k", 8)
    total = sum(sizes) if sizes else entry["N"]
    rng = random.Random(seed)
    collection = random_collection(rng, k, total, u, sizes)
    kind = parse_backend(entry.get("backend", "smalluniverse"), entry.get("delta", 0.5))
    record = {
        "kind": "ssi",
        "N": collection.total_size,
        "k": collection.k,
        "u": u,
        "backend": kind.name,
        "delta": getattr(kind, "delta", None),
        "seed": seed,
    }
    started = time.perf_counter()
    try:
        backend = build_backend(collection, kind, mem_budget)
    except BudgetError as e:
        record["error"] = str(e)
        return record
    record["build_seconds"] = round(time.perf_counter() - started, 6)
    record["build_bytes"] = backend.space_bytes()
    queries = entry.get("queries", 1000)
    qrng = random.Random(seed + 1)
    plan = [
        (qrng.randint(1, collection.k), qrng.randint(1, collection.k), qrng.randint(-u, u))
        for _ in range(queries)
    ]
    started = time.perf_counter()
    hits = 0
    for i, j, s in plan:
        if backend.exists(i, j, s) is not None:
            hits += 1
    elapsed = time.perf_counter() - started
    record["queries"] = queries
    record["hits"] = hits
    record["probes_total"] = backend.probes
    record["probes_per_query"] = round(backend.probes / max(queries, 1), 3)
    record["query_us"] = round(elapsed / max(queries, 1) * 1e6, 3)
    return record


def _gapped_string_record(entry: dict, mem_budget: int) -> dict:
    seed = entry.get("seed", 0)
    n = entry["n"]
    sigma = entry.get("sigma", 4)
    rng = random.Random(seed)
    text = random_text(rng, n, sigma)
    kind = parse_backend(entry.get("backend", "linear"), entry.get("delta", 0.5))
    record = {
        "kind": "gapped-string",
        "n": n,
        "sigma": sigma,
        "backend": kind.name,
        "seed": seed,
    }
    started = time.perf_counter()
    try:
        index = build_gapped_string_index(text, kind, mem_budget)
    except BudgetError as e:
        record["error"] = str(e)
        return record
    record["build_seconds"] = round(time.perf_counter() - started, 6)
    record["set_elements"] = index.set_elements
    record["stored_elements"] = index.gapped.total_elements
    queries = entry.get("queries", 20)
    occ = 0
    dedup_max = 0
    started = time.perf_counter()
    calls_before = index.ssi_calls()
    for _ in range(queries):
        p1 = random_pattern_from(rng, text, 5)
        p2 = random_pattern_from(rng, text, 5)
        lo = rng.randint(0, n // 2)
        hi = lo + rng.randint(0, n // 2)
        occ += len(index.report(p1, p2, lo, hi))
        dedup_max = max(dedup_max, index.gapped.last_max_multiplicity)
    elapsed = time.perf_counter() - started
    record["queries"] = queries
    record["occ_total"] = occ
    record["base_ssi_calls"] = index.ssi_calls() - calls_before
    record["dedup_max_multiplicity"] = dedup_max
    record["query_us"] = round(elapsed / max(queries, 1) * 1e6, 3)
    return record


def run_bench(spec: dict, mem_budget: int = DEFAULT_MEM_BUDGET) -> Iterator[dict]:
    """Yield one record per spec entry; an empty spec yields nothing."""
    for entry in spec.get("ssi", []):
        yield _ssi_record(entry, mem_budget)
    for entry in spec.get("gapped_string", []):
        yield _gapped_string_record(entry, mem_budget)
