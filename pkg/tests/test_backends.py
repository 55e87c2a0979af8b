import random

import pytest

from gapindex.backends import (
    FullTabulation,
    LinearScan,
    ShiftQuery,
    SmallUniverse,
    brute_force_ssi,
    build_backend,
    parse_backend,
    ssi_exists,
)
from gapindex.errors import BudgetError
from gapindex.generators import random_collection
from gapindex.sets import ingest_collection

ALL_KINDS = [LinearScan(), FullTabulation(), SmallUniverse(delta=0.5)]


def realized_shifts(c, i, j):
    return {b - a for a in c.set(i).elements for b in c.set(j).elements}


def test_fulltab_stores_enumerated_shifts():
    c = ingest_collection([[1, 3], [4]], u=6)
    backend = build_backend(c, FullTabulation())
    for i in (1, 2):
        for j in (1, 2):
            want = realized_shifts(c, i, j)
            for s in range(-8, 9):
                assert (backend.exists(i, j, s) is not None) == (s in want)
    assert realized_shifts(c, 1, 2) == {3, 1}
    assert 2 in realized_shifts(c, 1, 1) and 0 in realized_shifts(c, 1, 1)
    assert realized_shifts(c, 2, 1) == {-3, -1}
    assert realized_shifts(c, 2, 2) == {0}


def test_linear_scan_stores_n_entries():
    c = ingest_collection([[1, 5, 9], [2, 4], [7]], u=9)
    backend = build_backend(c, LinearScan())
    assert backend.dict_entries == c.total_size


def test_smalluniverse_threshold_boundary():
    # N = 4 singletons at delta = 0: threshold ceil(N^0) = 1, and "large"
    # means strictly bigger, so no set is large and the table stays empty.
    c = ingest_collection([[1], [2], [3], [4]], u=4)
    backend = build_backend(c, SmallUniverse(delta=0.0))
    assert backend.threshold == 1
    assert backend.large == [False] * 4
    assert backend.table.entries == 0
    assert backend.exists(1, 2, 1).a == 1


def test_smalluniverse_large_pairs_use_table():
    c = ingest_collection([list(range(1, 9)), list(range(2, 10)), [5]], u=10)
    backend = build_backend(c, SmallUniverse(delta=0.5))
    assert backend.large == [True, True, False]
    before = backend.probes
    cert = backend.exists(1, 2, 1)
    assert backend.probes == before  # table hit, no probing
    assert cert is not None and cert.a + 1 == cert.b


def test_exists_examples():
    c = ingest_collection([[1, 3], [4]], u=6)
    for kind in ALL_KINDS:
        backend = build_backend(c, kind)
        cert = ssi_exists(backend, ShiftQuery(1, 2, 1))
        assert (cert.a, cert.b) == (3, 4)
        assert ssi_exists(backend, ShiftQuery(1, 2, 2)) is None


def test_brute_force_examples():
    c = ingest_collection([[1, 2], [3, 4]], u=6)
    assert brute_force_ssi(c, ShiftQuery(1, 2, 2)) == [(1, 3), (2, 4)]
    assert brute_force_ssi(c, ShiftQuery(1, 2, 10)) == []


def test_backend_agreement_fuzz():
    rng = random.Random(11)
    for _ in range(30):
        k = rng.randint(1, 8)
        u = rng.randint(5, 1000)
        c = random_collection(rng, k, rng.randint(k, 200), u)
        backends = [build_backend(c, kind) for kind in ALL_KINDS]
        for _ in range(200):
            i, j = rng.randint(1, k), rng.randint(1, k)
            s = rng.randint(-u, u)
            expected = brute_force_ssi(c, ShiftQuery(i, j, s))
            certs = [b.exists(i, j, s) for b in backends]
            for cert in certs:
                assert (cert is not None) == bool(expected)
                if cert is not None:
                    # All backends return the smallest-a witness.
                    assert (cert.a, cert.b) == expected[0]
                    assert cert.a in c.set(i).elements
                    assert cert.b in c.set(j).elements
                    assert cert.a + s == cert.b


def test_budget_guard():
    c = ingest_collection([list(range(1, 50)), list(range(1, 50))], u=64)
    with pytest.raises(BudgetError):
        build_backend(c, SmallUniverse(delta=0.0), mem_budget=100)
    with pytest.raises(BudgetError):
        build_backend(c, FullTabulation(), mem_budget=100)


def test_fulltab_entry_count_matches_enumeration():
    rng = random.Random(2)
    for _ in range(10):
        c = random_collection(rng, rng.randint(1, 5), rng.randint(5, 60), 80)
        backend = build_backend(c, FullTabulation())
        expected = sum(
            len(realized_shifts(c, i, j))
            for i in range(1, c.k + 1)
            for j in range(1, c.k + 1)
        )
        assert backend.table.entries == expected


def test_parse_backend():
    assert parse_backend("linear") == LinearScan()
    assert parse_backend("fulltab") == FullTabulation()
    assert parse_backend("smalluniverse", 0.25) == SmallUniverse(delta=0.25)
    with pytest.raises(ValueError):
        parse_backend("nope")
    with pytest.raises(ValueError):
        parse_backend("smalluniverse", 1.5)


def test_space_accounting_monotone_in_delta():
    rng = random.Random(5)
    c = random_collection(rng, 6, 120, 40)
    sizes = []
    probes = []
    queries = [(rng.randint(1, 6), rng.randint(1, 6), rng.randint(-40, 40)) for _ in range(300)]
    for delta in (0.0, 0.5, 1.0):
        backend = build_backend(c, SmallUniverse(delta=delta))
        sizes.append(backend.space_bytes())
        for i, j, s in queries:
            backend.exists(i, j, s)
        probes.append(backend.probes)
    assert sizes == sorted(sizes, reverse=True)
    assert probes == sorted(probes)
