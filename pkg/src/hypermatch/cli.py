"""Command-line front end: ``hypermatch {match,verify,gen-queries,gen-data,stats}``.

Exit codes: 0 success, 1 input error (or a verification mismatch), 2 refusal
by an oracle scale guard, 3 internal contract violation.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from hypermatch.chs import build_chs
from hypermatch.engine import MODES, ORDERS, SearchConfig, match_all
from hypermatch.errors import (
    ContractViolation,
    GenerationError,
    HypermatchError,
    IndexCacheError,
    ScaleGuardError,
)
from hypermatch.filtering import initial_filter
from hypermatch.hypergraph import (
    Hypergraph,
    LabelTable,
    parse_hypergraph,
    serialize_hypergraph,
    validate_query,
)
from hypermatch.oracle import gen_query, gen_random_hypergraph, oracle_subsets
from hypermatch.sigindex import build_index, content_hash, load_index, save_index

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUSED = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit 2 is reserved for oracle refusals
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


@dataclass
class RunReport:
    """Per-query records plus geometric-mean aggregates."""

    time_limit: float | None = None
    records: list[dict] = field(default_factory=list)

    def add(self, query: str, filter_stats, search_stats) -> dict:
        status = search_stats.status
        elapsed = search_stats.wall_time
        if status == "timeout" and self.time_limit is not None:
            elapsed = self.time_limit
        record = {
            "query": query,
            "status": status,
            "embeddings": search_stats.embeddings_found,
            "time": elapsed,
            "filter": filter_stats.as_dict(),
            "search": search_stats.as_dict(),
        }
        self.records.append(record)
        return record

    def aggregate(self) -> dict:
        def gmean(values):
            positive = [v for v in values if v > 0]
            return statistics.geometric_mean(positive) if positive else None

        recs = self.records
        return {
            "queries": len(recs),
            "done": sum(r["status"] == "done" for r in recs),
            "timeout": sum(r["status"] == "timeout" for r in recs),
            "limit": sum(r["status"] == "limit" for r in recs),
            "geomean_time": gmean([r["time"] for r in recs]),
            "geomean_embeddings": gmean([r["embeddings"] for r in recs]),
            "geomean_candidates_before": gmean(
                [r["filter"]["candidates_before"] for r in recs]
            ),
            "geomean_candidates_after": gmean([r["filter"]["candidates_after"] for r in recs]),
            "geomean_recursive_calls": gmean([r["search"]["recursive_calls"] for r in recs]),
        }


def _read_data(path: str, cache: str | None = None):
    raw = Path(path).read_bytes()
    labels = LabelTable()
    h, labels = parse_hypergraph(raw, labels)
    if cache is None:
        return h, labels, build_index(h)
    key = content_hash(raw)
    try:
        idx = load_index(cache, key)
    except IndexCacheError:
        idx = build_index(h)
        save_index(idx, cache, key)
    return h, labels, idx


def _read_queries(paths, labels):
    queries = []
    for path in paths:
        q, _ = parse_hypergraph(Path(path).read_bytes(), labels)
        validate_query(q)
        queries.append((path, q))
    return queries


def _format(embedding) -> str:
    return " ".join(map(str, embedding))


def cmd_match(args) -> int:
    h, labels, idx = _read_data(args.data, args.index_cache)
    queries = _read_queries(args.queries, labels)
    config = SearchConfig(
        limit=args.limit,
        time_limit=args.timeout,
        mode=args.mode,
        order=args.order,
        tiebreak_seed=args.seed,
    )

    def work(item):
        path, q = item
        cs = build_chs(q, h, idx)
        fstats = initial_filter(q, cs)
        found = []
        sink = None if args.count_only else found.append
        sstats = match_all(q, h, cs, config, sink)
        if args.sorted:
            found.sort()
        return path, fstats, sstats, found

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(work, queries))
    else:
        results = [work(item) for item in queries]

    report = RunReport(time_limit=args.timeout)
    stats_out = None
    if args.stats:
        stats_out = open(args.stats_out, "w") if args.stats_out else sys.stderr
    out = sys.stdout
    many = len(results) > 1
    try:
        for path, fstats, sstats, found in results:
            record = report.add(path, fstats, sstats)
            if args.count_only:
                out.write(f"{path} {sstats.embeddings_found}\n" if many else f"{sstats.embeddings_found}\n")
            else:
                if many:
                    out.write(f"# {path}\n")
                for emb in found:
                    out.write(_format(emb) + "\n")
            if stats_out is not None:
                stats_out.write(json.dumps(record, sort_keys=True) + "\n")
        if stats_out is not None:
            stats_out.write(json.dumps({"aggregate": report.aggregate()}, sort_keys=True) + "\n")
    finally:
        if stats_out is not None and stats_out is not sys.stderr:
            stats_out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    h, labels, idx = _read_data(args.data)
    queries = _read_queries(args.queries, labels)
    config = SearchConfig(mode=args.mode, order=args.order, tiebreak_seed=args.seed)
    failed = False
    for path, q in queries:
        expected = oracle_subsets(
            q, h, max_query_edges=args.max_query_edges, max_data_edges=args.max_data_edges
        )
        cs = build_chs(q, h, idx)
        initial_filter(q, cs)
        found = []
        match_all(q, h, cs, config, found.append)
        got = set(found)
        extra = sorted(got - expected)
        missing = sorted(expected - got)
        duplicates = len(found) - len(got)
        ok = not extra and not missing and not duplicates
        failed |= not ok
        print(
            f"{'PASS' if ok else 'FAIL'} {path}: engine {len(got)} oracle {len(expected)}"
            f" extra {len(extra)} missing {len(missing)} duplicates {duplicates}"
        )
        for emb in extra:
            print(f"+ {_format(emb)}")
        for emb in missing:
            print(f"- {_format(emb)}")
    return EXIT_INPUT if failed else EXIT_OK


def cmd_gen_queries(args) -> int:
    raw = Path(args.data).read_bytes()
    h, labels = parse_hypergraph(raw)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    seeds = random.Random(args.seed)
    width = max(3, len(str(args.count - 1)))
    for i in range(args.count):
        query_seed = seeds.getrandbits(63)
        try:
            q = gen_query(query_seed, h, args.size)
        except GenerationError as exc:
            print(f"error: query {i}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        path = out / f"{args.prefix}{i:0{width}d}.hg"
        path.write_text(serialize_hypergraph(q, labels), encoding="utf-8")
    return EXIT_OK


def cmd_gen_data(args) -> int:
    h = gen_random_hypergraph(
        args.seed, args.vertices, args.edges, args.labels, (args.min_arity, args.max_arity)
    )
    text = serialize_hypergraph(h, LabelTable.numbered(args.labels))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def dataset_summary(h: Hypergraph) -> dict:
    max_arity, mean_arity = h.arity_stats()
    return {
        "vertices": h.num_vertices,
        "edges": h.num_edges,
        "labels": len(h.label_set()),
        "max_arity": max_arity,
        "mean_arity": round(mean_arity, 2),
        "duplicate_edges": h.normalization.duplicate_edges,
        "duplicate_vertices": h.normalization.duplicate_vertices,
    }


def cmd_stats(args) -> int:
    h, _ = parse_hypergraph(Path(args.data).read_bytes())
    summary = dataset_summary(h)
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        for key, value in summary.items():
            text = f"{value:.2f}" if key == "mean_arity" else str(value)
            print(f"{key:<19}{text}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypermatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("match", help="enumerate embeddings of queries in a data hypergraph")
    p.add_argument("data")
    p.add_argument("queries", nargs="+")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=_positive_int)
    p.add_argument("--timeout", type=_positive_float, metavar="SECS")
    p.add_argument("--mode", choices=MODES, default="both")
    p.add_argument("--order", choices=ORDERS, default="hybrid")
    p.add_argument("--seed", type=int, help="shuffle matching-order tiebreaks")
    p.add_argument("--stats", action="store_true", help="emit JSON run records")
    p.add_argument("--stats-out", metavar="PATH", help="write --stats records here, not stderr")
    p.add_argument("--sorted", action="store_true")
    p.add_argument("--index-cache", metavar="PATH")
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("verify", help="compare the engine with the subset oracle")
    p.add_argument("data")
    p.add_argument("queries", nargs="+")
    p.add_argument("--mode", choices=MODES, default="both")
    p.add_argument("--order", choices=ORDERS, default="hybrid")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-query-edges", type=_positive_int, default=6)
    p.add_argument("--max-data-edges", type=_positive_int, default=500)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-queries", help="sample connected queries by random walks")
    p.add_argument("data")
    p.add_argument("--size", "-k", type=_positive_int, required=True)
    p.add_argument("--count", "-n", type=_positive_int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--prefix", default="query_")
    p.set_defaults(func=cmd_gen_queries)

    p = sub.add_parser("gen-data", help="write a random data hypergraph")
    p.add_argument("--vertices", type=_positive_int, required=True)
    p.add_argument("--edges", type=_positive_int, required=True)
    p.add_argument("--labels", type=_positive_int, default=1)
    p.add_argument("--min-arity", type=_positive_int, default=2)
    p.add_argument("--max-arity", type=_positive_int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("stats", help="summarize a hypergraph file")
    p.add_argument("data")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScaleGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ContractViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (HypermatchError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
