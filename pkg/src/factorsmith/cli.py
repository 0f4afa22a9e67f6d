"""Command-line surface: check, factor, toughness, verify, gen, convert.

Exit codes are a stable contract: 0 = condition holds / factor found / run
clean, 1 = violated / no factor / disagreement, 2 = usage or parse error.
Input auto-detection: a line whose first token is an integer (or an "n"
header) is an edge list; otherwise a line of graph6 charset bytes is graph6.
Set FACTORSMITH_LOG=debug for rule-by-rule rewrite logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from factorsmith.conditions import check_iso_condition, isolated_toughness, parse_ratio
from factorsmith.corpus import CorpusSpec
from factorsmith.families import Family
from factorsmith.graphs import (
    Graph,
    GraphFormatError,
    encode_graph6,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
    to_dot,
)
from factorsmith.reducer import (
    FixpointUnclassified,
    extract_component_factor_detailed,
    from_assignment,
    verify_certificate,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

_G6_MIN, _G6_MAX = 63, 126


def _looks_like_edge_list(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "n" and len(tok) == 2:
            return True
        try:
            int(tok[0])
            return True
        except ValueError:
            return False
    return False


def read_graphs(text: str, fmt: str = "auto") -> list[tuple[str, Graph]]:
    """(label, graph) pairs: graph6 = one graph per line, edge list = one
    graph per input."""
    if fmt == "auto":
        fmt = "edges" if _looks_like_edge_list(text) else "g6"
    if fmt == "edges":
        return [("edges:0", parse_edge_list(text))]
    out = []
    for idx, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((line, parse_graph6(line)))
    if not out:
        raise GraphFormatError("no graphs found in input")
    return out


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


# --- subcommands ---------------------------------------------------------------


def cmd_check(args) -> int:
    try:
        c = parse_ratio(args.c)
        if c <= 0:
            raise ValueError(f"condition ratio must be positive, got {args.c}")
        graphs = read_graphs(_read_input(args.input), args.format)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    violated = False
    for label, g in graphs:
        witness = check_iso_condition(g, c)
        if witness is None:
            print(f"{label}: holds (iso(G-S) <= {c} |S| for all S)")
        else:
            violated = True
            s = "{" + ",".join(map(str, sorted(witness.removed))) + "}"
            iso = "{" + ",".join(map(str, sorted(witness.isolated))) + "}"
            print(f"{label}: violated S={s} isolates {iso}")
    return EXIT_NEGATIVE if violated else EXIT_OK


def _certificate_json(cert) -> dict:
    return {
        "family": {"kind": cert.family.kind, "k": cert.family.k},
        "components": [
            {
                "vertices": list(e.vertices),
                "edges": [list(ed) for ed in e.edges],
                "class": e.cls.label,
            }
            for e in cert.components
        ],
    }


def cmd_factor(args) -> int:
    try:
        k = args.k
        family = Family.for_k(k)
        if args.family is not None and args.family != family.kind:
            raise ValueError(f"family {args.family} does not match k={k}")
        graphs = read_graphs(_read_input(args.input), args.format)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    missing = False
    for label, g in graphs:
        cert, h, trace = extract_component_factor_detailed(g, k)
        if cert is None:
            missing = True
            print(f"{label}: no factor (condition fails)")
            continue
        if args.emit == "json":
            print(json.dumps({"graph": label, "certificate": _certificate_json(cert)}))
        elif args.emit == "dot":
            colored = from_assignment(g, k, h)
            sys.stdout.write(to_dot(g, highlight=colored))
        else:  # trace
            print(f"# {label}: {len(trace.steps)} rewrite(s)")
            sys.stdout.write(trace.to_text())
            classes = ", ".join(e.cls.label for e in cert.components)
            print(f"# components: {classes}")
    return EXIT_NEGATIVE if missing else EXIT_OK


def cmd_toughness(args) -> int:
    try:
        graphs = read_graphs(_read_input(args.input), args.format)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for label, g in graphs:
        value = isolated_toughness(g)
        if value is None:
            print(f"{label}: infinity")
        else:
            print(f"{label}: {value.numerator}/{value.denominator}")
    return EXIT_OK


@dataclass
class _VerifyRecord:
    graph_id: str
    n: int
    k: int
    condition_holds: bool
    witness: list[int] | None
    has_factor: bool
    certificate: dict | None
    trace_length: int | None
    agree: bool
    error: str | None
    ms: float


def _verify_one(payload) -> dict:
    label, n, edges, ks = payload
    g = Graph(n, edges)
    records = []
    for k in ks:
        t0 = time.perf_counter()
        witness = check_iso_condition(g, Fraction(2 * k + 1, 2))
        error = None
        cert = None
        trace_len = None
        has_factor = False
        try:
            cert_obj, _h, trace = extract_component_factor_detailed(g, k)
            if cert_obj is not None:
                has_factor = True
                trace_len = len(trace.steps)
                if not verify_certificate(g, cert_obj):
                    error = "certificate failed re-validation"
                if trace_len > g.num_edges:
                    error = "rewrite count exceeded edge budget"
                cert = _certificate_json(cert_obj)
        except FixpointUnclassified as exc:
            error = f"FIXPOINT_UNCLASSIFIED: {exc}"
        agree = error is None and (witness is None) == has_factor
        records.append(
            _VerifyRecord(
                graph_id=label,
                n=g.n,
                k=k,
                condition_holds=witness is None,
                witness=sorted(witness.removed) if witness is not None else None,
                has_factor=has_factor,
                certificate=cert,
                trace_length=trace_len,
                agree=agree,
                error=error,
                ms=round((time.perf_counter() - t0) * 1000.0, 3),
            ).__dict__
        )
    return {"graph": label, "records": records}


def _corpus_from_args(args) -> CorpusSpec:
    chosen = [
        name
        for name in ("exhaustive", "gnp", "trees", "paths_cycles", "file")
        if getattr(args, name, None) is not None
    ]
    if len(chosen) != 1:
        raise ValueError("choose exactly one corpus source")
    name = chosen[0]
    if name == "exhaustive":
        return CorpusSpec("exhaustive", n=args.exhaustive)
    if name == "paths_cycles":
        return CorpusSpec("paths_cycles", n=args.paths_cycles)
    if name == "file":
        return CorpusSpec("file", path=args.file)
    parts = getattr(args, name).split(",")
    seed = args.seed
    fields = {}
    positional = []
    for part in parts:
        if "=" in part:
            key, val = part.split("=", 1)
            fields[key.strip()] = val.strip()
        else:
            positional.append(part.strip())
    if name == "gnp":
        if len(positional) < 3:
            raise ValueError("gnp spec is n,p,count[,seed=S]")
        n, p, count = int(positional[0]), parse_ratio(positional[1]), int(positional[2])
        if "seed" in fields:
            seed = int(fields["seed"])
        return CorpusSpec("gnp", n=n, p=p, count=count, seed=seed)
    if len(positional) < 2:
        raise ValueError("trees spec is n,count[,seed=S]")
    n, count = int(positional[0]), int(positional[1])
    if "seed" in fields:
        seed = int(fields["seed"])
    return CorpusSpec("trees", n=n, count=count, seed=seed)


def cmd_verify(args) -> int:
    try:
        spec = _corpus_from_args(args)
        ks = [int(x) for x in args.k.split(",")]
        if any(k < 1 for k in ks):
            raise ValueError("k values must be >= 1")
        graphs = list(spec.graphs())
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    t0 = time.perf_counter()
    payloads = [
        (f"{spec.kind}:{idx}", g.n, list(g.edges), ks) for idx, g in enumerate(graphs)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, payloads, chunksize=16))
    else:
        results = [_verify_one(p) for p in payloads]
    records = [rec for res in results for rec in res["records"]]
    disagreements = sum(1 for r in records if not r["agree"])
    failures = sum(1 for r in records if r["error"])
    report = {
        "graphs": records,
        "summary": {
            "graphs": len(graphs),
            "checked": len(records),
            "agreements": len(records) - disagreements,
            "disagreements": disagreements,
            "failures": failures,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        },
    }
    if args.emit == "json":
        print(json.dumps(report, indent=2))
    else:
        s = report["summary"]
        print(
            f"{s['graphs']} graphs, {s['checked']} checks, "
            f"{s['disagreements']} disagreements, {s['failures']} failures"
        )
        for r in records:
            if not r["agree"]:
                print(f"  DISAGREE {r['graph_id']} k={r['k']}: {r['error'] or 'condition vs factor'}")
    return EXIT_OK if disagreements == 0 and failures == 0 else EXIT_NEGATIVE


def cmd_gen(args) -> int:
    try:
        if args.cubic_tree is not None:
            from factorsmith.corpus import random_cubic_tree

            m, seed = (int(x) for x in args.cubic_tree.split(","))
            graphs = [random_cubic_tree(m, seed)]
        elif args.expansion_base is not None:
            from factorsmith.corpus import random_expansion_base

            k, size, seed = (int(x) for x in args.expansion_base.split(","))
            graphs = [random_expansion_base(k, size, seed)]
        elif args.all_trees is not None:
            spec = CorpusSpec("all_trees", n=args.all_trees)
            graphs = spec.graphs()
        else:
            graphs = _corpus_from_args(args).graphs()
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for g in graphs:
        print(encode_graph6(g))
    return EXIT_OK


def cmd_convert(args) -> int:
    try:
        graphs = read_graphs(_read_input(args.input), args.format)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for _label, g in graphs:
        if args.to == "g6":
            print(encode_graph6(g))
        elif args.to == "edges":
            sys.stdout.write(format_edge_list(g))
        else:
            sys.stdout.write(to_dot(g))
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default="-", help="input file, or - for stdin")
    p.add_argument("--format", choices=["auto", "g6", "edges"], default="auto")


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--exhaustive", type=int, default=None, metavar="N")
    p.add_argument("--gnp", default=None, metavar="n,p,count[,seed=S]")
    p.add_argument("--trees", default=None, metavar="n,count[,seed=S]")
    p.add_argument("--paths-cycles", dest="paths_cycles", type=int, default=None, metavar="N")
    p.add_argument("--file", default=None, metavar="PATH", help="graph6, one per line")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="factorsmith", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test iso(G-S) <= c|S| for all S")
    _add_input_args(p)
    p.add_argument("--c", required=True, help="ratio p/q, e.g. 3/2")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factor", help="extract a certified component factor")
    _add_input_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=["F1", "F2"], default=None)
    p.add_argument("--emit", choices=["json", "dot", "trace"], default="json")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("toughness", help="exact isolated toughness")
    _add_input_args(p)
    p.set_defaults(func=cmd_toughness)

    p = sub.add_parser("verify", help="batch equivalence run over a corpus")
    _add_corpus_args(p)
    p.add_argument("--k", default="1", help="comma list, e.g. 1,2,3")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit corpus graphs as graph6")
    _add_corpus_args(p)
    p.add_argument("--all-trees", dest="all_trees", type=int, default=None, metavar="N",
                   help="all free trees with <= N vertices")
    p.add_argument("--cubic-tree", dest="cubic_tree", default=None, metavar="m,seed")
    p.add_argument("--expansion-base", dest="expansion_base", default=None, metavar="k,size,seed")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("convert", help="convert between graph formats")
    _add_input_args(p)
    p.add_argument("--to", choices=["g6", "edges", "dot"], required=True)
    p.set_defaults(func=cmd_convert)

    return ap


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("FACTORSMITH_LOG", "").lower()
    if level in ("debug", "info", "warning"):
        logging.basicConfig(level=getattr(logging, level.upper()))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
