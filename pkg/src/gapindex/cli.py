"""Command line: build, query, verify, bench and gen.

Exit codes: 0 success, 2 format/parse errors, 3 guard or budget rejections,
4 verification failure. Query output is line-delimited; `--count-queries`
appends `#`-prefixed counter lines that parsers can skip.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .backends import DEFAULT_MEM_BUDGET, parse_backend
from .bench import run_bench
from .errors import FormatError, GapIndexError, GuardError, VerificationError
from .gapped import gapped_exists, gapped_report, plan_cover
from .generators import random_collection, random_text
from .persist import (
    KINDS,
    build_artifact,
    load_artifact,
    make_backend,
    make_gapped_index,
    make_jumbled_index,
    make_reporting_index,
    make_shift_index,
    make_string_index,
    save_artifact,
)
from .reporting import report_shift
from .sets import format_collection
from .verify import verify_artifact

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_GUARD = 3
EXIT_VERIFY = 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapindex")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build and persist an index")
    p_build.add_argument("input")
    p_build.add_argument("-o", "--out", required=True)
    p_build.add_argument("--kind", required=True, choices=KINDS)
    p_build.add_argument("--backend", default="linear",
                         choices=["linear", "fulltab", "smalluniverse"])
    p_build.add_argument("--delta", type=float, default=0.5)
    p_build.add_argument("--mem-budget", type=int, default=DEFAULT_MEM_BUDGET)

    p_query = sub.add_parser("query", help="answer a query file against an index")
    p_query.add_argument("index")
    p_query.add_argument("queries")
    p_query.add_argument("--mode", default="exists", choices=["exists", "report"])
    p_query.add_argument("--count-queries", action="store_true")
    p_query.add_argument("--plan", action="store_true",
                         help="dump the cover plan for gapped queries")
    p_query.add_argument("--mem-budget", type=int, default=DEFAULT_MEM_BUDGET)

    p_verify = sub.add_parser("verify", help="run the oracle suite for an index")
    p_verify.add_argument("index")
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--mem-budget", type=int, default=DEFAULT_MEM_BUDGET)

    p_bench = sub.add_parser("bench", help="run a bench spec, one JSON record per line")
    p_bench.add_argument("spec")
    p_bench.add_argument("--mem-budget", type=int, default=DEFAULT_MEM_BUDGET)

    p_gen = sub.add_parser("gen", help="generate a random instance file")
    p_gen.add_argument("--kind", required=True, choices=["collection", "text"])
    p_gen.add_argument("-o", "--out", required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--k", type=int, default=4)
    p_gen.add_argument("--total", type=int, default=100)
    p_gen.add_argument("--u", type=int, default=1000)
    p_gen.add_argument("--length", type=int, default=200)
    p_gen.add_argument("--sigma", type=int, default=4)
    return parser


def _cmd_build(args) -> int:
    with open(args.input, "rb") as fh:
        source = fh.read()
    backend = parse_backend(args.backend, args.delta)
    artifact = build_artifact(args.kind, source, backend, args.mem_budget)
    save_artifact(args.out, artifact)
    manifest = dict(artifact.manifest)
    manifest["out"] = args.out
    print(json.dumps(manifest, sort_keys=True))
    return EXIT_OK


def _parse_ints(tokens: list[str], want: int, line: str) -> list[int]:
    if len(tokens) != want:
        raise FormatError(f"expected {want} fields, got {len(tokens)}: {line!r}")
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise FormatError(f"bad integer in {line!r}: {e}") from None


class _QueryEngine:
    """Per-kind query answering over a loaded artifact."""

    def __init__(self, artifact, mode: str, show_plan: bool):
        self.artifact = artifact
        self.mode = mode
        self.show_plan = show_plan
        kind = artifact.kind
        if kind == "ssi":
            self.index = (
                make_reporting_index(artifact) if mode == "report" else None
            )
            self.backend = self.index.backend if self.index else make_backend(artifact)
        elif kind == "gapped-set":
            self.index = make_gapped_index(artifact)
        elif kind == "gapped-string":
            self.index = make_string_index(artifact)
        elif kind == "jumbled":
            self.index = make_jumbled_index(artifact)
        elif kind == "smallest-shift":
            self.index = make_shift_index(artifact)

    def counters(self) -> str:
        kind = self.artifact.kind
        if kind == "ssi":
            calls = self.index.existence_calls if self.index else 0
            return f"# probes={self.backend.probes} existence_calls={calls}"
        if kind == "gapped-set":
            return (
                f"# ssi_calls={self.index.ssi_calls()}"
                f" plan_size={self.index.last_plan_size}"
                f" raw_pairs={self.index.last_raw_pairs}"
            )
        if kind == "gapped-string":
            return f"# ssi_calls={self.index.ssi_calls()}"
        if kind == "smallest-shift":
            return f"# probes={self.index.probes}"
        return "#"

    def answer(self, line: str, out) -> None:
        kind = self.artifact.kind
        tokens = line.split()
        if kind == "ssi":
            i, j, s = _parse_ints(tokens, 3, line)
            if self.mode == "exists":
                cert = self.backend.exists(i, j, s)
                out.write(f"YES {cert.a} {cert.b}\n" if cert else "NO\n")
            else:
                pairs = report_shift(self.index, i, j, s)
                out.write(f"occ={len(pairs)}\n")
                for a, b in pairs:
                    out.write(f"{a} {b}\n")
        elif kind == "gapped-set":
            i, j, lo, hi = _parse_ints(tokens, 4, line)
            if self.show_plan:
                clamped = self.index._clamped(lo, hi)
                if clamped is not None:
                    for text in plan_cover(*clamped).describe().splitlines():
                        out.write(f"# {text}\n")
            if self.mode == "exists":
                hit = gapped_exists(self.index, i, j, lo, hi)
                out.write(f"YES {hit[0]} {hit[1]}\n" if hit else "NO\n")
            else:
                pairs = gapped_report(self.index, i, j, lo, hi)
                out.write(f"occ={len(pairs)}\n")
                for a, b in pairs:
                    out.write(f"{a} {b}\n")
        elif kind == "gapped-string":
            if len(tokens) != 4:
                raise FormatError(f"expected 'P1 P2 lo hi', got {line!r}")
            p1, p2 = tokens[0].encode(), tokens[1].encode()
            lo, hi = _parse_ints(tokens[2:], 2, line)
            if self.mode == "exists":
                hit = self.index.exists(p1, p2, lo, hi)
                out.write(f"YES {hit[0]} {hit[1]}\n" if hit else "NO\n")
            else:
                pairs = self.index.report(p1, p2, lo, hi)
                out.write(f"occ={len(pairs)}\n")
                for i, j in pairs:
                    out.write(f"{i} {j}\n")
        elif kind == "jumbled":
            pattern = _parse_ints(tokens, self.index.sigma, line)
            if self.mode == "exists":
                out.write("YES\n" if self.index.exists(pattern) else "NO\n")
            else:
                pairs = self.index.report(pattern)
                out.write(f"occ={len(pairs)}\n")
                for i, j in pairs:
                    out.write(f"{i} {j}\n")
        elif kind == "smallest-shift":
            i, j = _parse_ints(tokens, 2, line)
            from .smallest_shift import smallest_shift

            shift = smallest_shift(self.index, i, j)
            out.write("NONE\n" if shift is None else f"{shift}\n")


def _cmd_query(args) -> int:
    artifact = load_artifact(args.index, args.mem_budget)
    engine = _QueryEngine(artifact, args.mode, args.plan)
    with open(args.queries, "r") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    status = EXIT_OK
    for line in lines:
        try:
            engine.answer(line, sys.stdout)
            if args.count_queries:
                print(engine.counters())
        except FormatError as e:
            print(f"error: {e}", file=sys.stderr)
            status = EXIT_FORMAT
    return status


def _cmd_verify(args) -> int:
    artifact = load_artifact(args.index, args.mem_budget)
    ok, lines = verify_artifact(artifact, args.trials, args.seed)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_bench(args) -> int:
    with open(args.spec, "r") as fh:
        body = fh.read().strip()
    try:
        spec = json.loads(body) if body else {}
    except json.JSONDecodeError as e:
        raise FormatError(f"bench spec is not valid JSON: {e}") from None
    for record in run_bench(spec, args.mem_budget):
        print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "collection":
        collection = random_collection(rng, args.k, args.total, args.u)
        payload = format_collection(collection).encode()
    else:
        payload = random_text(rng, args.length, args.sigma)
    with open(args.out, "wb") as fh:
        fh.write(payload)
    print(json.dumps({"kind": args.kind, "out": args.out, "bytes": len(payload),
                      "seed": args.seed}, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {
        "build": _cmd_build,
        "query": _cmd_query,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
        "gen": _cmd_gen,
    }[args.command]
    try:
        return handler(args)
    except FormatError as e:
        print(f"format error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except GuardError as e:
        print(f"guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except VerificationError as e:
        print(f"verification: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except FileNotFoundError as e:
        print(f"format error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except GapIndexError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
