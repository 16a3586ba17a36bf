"""Command-line front end: generate, analyze, verify, search, render."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import io
from .analysis import is_gc_set, usage_report
from .incidence import build_index, mu
from .interpolation import is_poised
from .lattices import DEFAULT_SEED, FAMILIES, ConstructionError, GenerationError, generate
from .search import TARGETS, search
from .theorems import CLAIMS, run_suite, suite_failed

OUTPUT_ENV = "GCSETS_OUTPUT_DIR"


def output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV) or ".")


def _default_name(family: str, n, seed: int) -> str:
    deg = f"-n{n}" if n is not None else ""
    return f"{family}{deg}-seed{seed}.json"


def _load(args):
    """Node set from a file argument, or generated from --family/--n/--seed."""
    if args.input:
        return io.read_node_set(args.input), args.input
    if not args.family:
        raise SystemExit("error: give an input file or --family")
    L = generate(args.family, args.n, args.seed)
    return L, _default_name(args.family, args.n, args.seed)


def cmd_generate(args) -> int:
    L = generate(args.family, args.n, args.seed)
    out = Path(args.output) if args.output else output_dir() / _default_name(args.family, args.n, args.seed)
    io.write_node_set(out, L)
    print(f"wrote {out} ({len(L.nodes)} nodes, n={L.n})")
    return 0


def analysis_report(L) -> dict:
    X = L.node_set
    rep = {"n": X.n, "nodes": len(X), "poised": is_poised(X)}
    idx = build_index(X)
    by_k = {}
    for ell in idx.lines:
        by_k.setdefault(idx.count(ell), []).append([str(v) for v in ell.triple()])
    rep["k_node_lines"] = {str(k): by_k[k] for k in sorted(by_k, reverse=True)}
    rep["mu"] = mu(X)
    if not rep["poised"]:
        rep["gc"] = None
        return rep
    gc = is_gc_set(X)
    rep["gc"] = gc.is_gc
    if not gc:
        rep["first_non_factoring_node"] = X.index(gc.failing_nodes[0])
    rep["n_node_lines"] = []
    if X.n >= 2:
        for ell in (e for e in idx.lines if idx.count(e) == X.n):
            r = usage_report(X, ell)
            rep["n_node_lines"].append({
                "line": [str(v) for v in ell.triple()],
                "usage_count": len(r.usage_set),
                "usage_set": [X.index(p) for p in r.usage_set],
                "case": r.case.value,
            })
    return rep


def cmd_analyze(args) -> int:
    L, source = _load(args)
    rep = analysis_report(L)
    text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if args.output:
        io.write_atomic(args.output, text)
    if args.json:
        sys.stdout.write(text)
        return 0
    print(f"source: {source}")
    print(f"n = {rep['n']}, |X| = {rep['nodes']}, poised: {rep['poised']}")
    print(f"GC: {str(rep['gc']).lower()}" + (
        f" (node {rep['first_non_factoring_node']} does not factor)" if "first_non_factoring_node" in rep else ""))
    print(f"mu = {rep['mu']}")
    for k, lines in rep["k_node_lines"].items():
        print(f"{k}-node lines: {len(lines)}")
    for r in rep.get("n_node_lines", []):
        print(f"  n-node line {' '.join(r['line'])}: |X_l| = {r['usage_count']}, case {r['case']}")
    return 0


def cmd_verify(args) -> int:
    L, source = _load(args)
    claims = args.claim or None
    if claims:
        bad = [c for c in claims if c not in CLAIMS]
        if bad:
            print(f"error: unknown claim id(s) {', '.join(bad)}; choose from {', '.join(CLAIMS)}", file=sys.stderr)
            return 2
    verdicts = run_suite(L.node_set, claims)
    lines = io.verdict_lines(verdicts, str(source))
    if args.output:
        io.write_atomic(args.output, "\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    print(io.summary_table(verdicts))
    return 1 if suite_failed(verdicts) else 0


def cmd_search(args) -> int:
    outdir = Path(args.output) if args.output else output_dir() / "search"

    def save(hit):
        name = f"{hit.target}-n{hit.n}-seed{hit.seed}.json"
        L = hit.candidate
        L.provenance.update({"search": hit.record()})
        io.write_node_set(outdir / name, L)
        rec = hit.record()
        rec["path"] = str(outdir / name)
        print(json.dumps(rec, sort_keys=True))
        if hit.severity == "critical":
            print("!!! GM COUNTEREXAMPLE: a GC set without a maximal line was certified !!!", file=sys.stderr)

    rep = search(args.target, args.n, args.budget, args.seed, args.workers, on_hit=save)
    mix = ", ".join(f"{f}={k}" for f, k in rep.by_family.items())
    print(f"target {rep.target}, n={rep.n}, seeds {rep.seeds.start}..{rep.seeds.stop - 1}: "
          f"{rep.attempts} attempts ({mix}), {len(rep.hits)} hit(s)")
    return 0


def cmd_render(args) -> int:
    from .render import render

    L, source = _load(args)
    stem = Path(str(source)).stem
    out = Path(args.output) if args.output else output_dir() / f"{stem}.svg"
    render(L, out, args.title)
    print(f"wrote {out}")
    return 0


def _add_source(p):
    p.add_argument("input", nargs="?", help="node-set file (or use --family/--n/--seed)")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcsets", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated node set")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", help=f"file path (default: ${OUTPUT_ENV} or cwd)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="poisedness, GC, mu, k-node lines, usage reports")
    _add_source(p)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run claim verifiers; exit 1 on any fail")
    _add_source(p)
    p.add_argument("--claim", action="append", help=f"claim id, repeatable ({', '.join(CLAIMS)})")
    p.add_argument("--output", help="write verdict records (JSON lines) here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="seeded search with exact certification")
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--budget", type=int, default=100, help="number of seeds to try")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", help="directory for hit files")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("render", help="draw a node set as a vector figure")
    _add_source(p)
    p.add_argument("--output", help="figure path (.svg default, .pdf works too)")
    p.add_argument("--title")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) is not None and getattr(args, "budget", 1) <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except io.NodeSetFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
