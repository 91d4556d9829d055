"""Batch command-line surface and file I/O.

Data goes to stdout, logs to stderr.  Graphs are read either as DIMACS
coloring files (``p edge n m`` header, ``e u v`` lines, 1-based ids) or as
JSON ``{"n": ..., "edges": [[u, v], ...]}``; the format is sniffed from the
extension and can be forced with ``--format``.

Exit codes: 0 success, 1 negative verdict (non-member, invalid certificate,
unclassified), 2 malformed input, 3 budget exceeded, 4 internal
classification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Dict, List, Optional, Tuple

from .coloring import chi_exact
from .cutsets import build_clique_tree
from .errors import (
    BudgetExceededError,
    ContractViolationError,
    GenerationError,
    MalformedInputError,
    PipelineError,
)
from .generators import (
    gen_glue,
    gen_line_of_subdivided_cubic,
    gen_nonmember,
    gen_series_parallel,
    random_cubic_graph,
)
from .graph import Graph, build_graph
from .patterns import DEFAULT_EXACT_BUDGET, verify_membership
from .pipeline import ColoringCertificate, color_class_member, verify_certificate
from .recognition import BRANCH_UNCLASSIFIED, classify_basic

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_MALFORMED = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

BUDGET_ENV = "TRICOLOR_BUDGET"

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Graph file I/O


def parse_dimacs(text: str) -> Graph:
    n = None
    edges: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if len(fields) < 4 or fields[1] not in ("edge", "edges", "col"):
                raise MalformedInputError(f"line {lineno}: bad problem line {line!r}")
            n = int(fields[2])
        elif fields[0] == "e":
            if n is None:
                raise MalformedInputError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise MalformedInputError(f"line {lineno}: bad edge line {line!r}")
            u, v = int(fields[1]) - 1, int(fields[2]) - 1
            edges.append((u, v))
        else:
            raise MalformedInputError(f"line {lineno}: unknown record {fields[0]!r}")
    if n is None:
        raise MalformedInputError("missing problem line")
    return build_graph(edges, n)


def write_dimacs(g: Graph) -> str:
    if g.vertices != tuple(range(g.n)):
        raise MalformedInputError("DIMACS output requires contiguous ids starting at 0")
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph_json(data: Dict) -> Graph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad graph JSON: {exc}") from exc
    return build_graph(edges, n)


def graph_to_json(g: Graph) -> Dict:
    if g.vertices != tuple(range(g.n)):
        raise MalformedInputError("JSON output requires contiguous ids starting at 0")
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def read_graph(path: str, fmt: Optional[str] = None) -> Graph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "col"
    if fmt == "json":
        try:
            return parse_graph_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"{path}: invalid JSON: {exc}") from exc
    if fmt == "col":
        return parse_dimacs(text)
    raise MalformedInputError(f"unknown format {fmt!r}")


def _emit(data: Dict) -> None:
    json.dump(data, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_EXACT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"{BUDGET_ENV} must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_recognize(args) -> int:
    g = read_graph(args.file, args.format)
    verdict = classify_basic(g)
    _emit(verdict.to_json())
    return EXIT_OK if verdict.branch != BRANCH_UNCLASSIFIED else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    g = read_graph(args.file, args.format)
    _emit(build_clique_tree(g).to_json())
    return EXIT_OK


def cmd_color(args) -> int:
    g = read_graph(args.file, args.format)
    cert = color_class_member(
        g,
        jobs=args.jobs,
        verify_membership_first=args.verify_membership,
        membership_budget=args.budget,
    )
    _emit(cert.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.format)
    try:
        with open(args.cert) as fh:
            cert = ColoringCertificate.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise MalformedInputError(f"cannot load certificate {args.cert}: {exc}") from exc
    ok = verify_certificate(g, cert)
    _emit({"valid": ok})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_chi(args) -> int:
    g = read_graph(args.file, args.format)
    chi, witness = chi_exact(g, budget=args.budget)
    sys.stdout.write(f"{chi}\n")
    logger.info("witness colors: %s", witness.to_json())
    return EXIT_OK


def cmd_membership(args) -> int:
    g = read_graph(args.file, args.format)
    report = verify_membership(g, budget=args.budget)
    _emit(report.to_json())
    if report.verdict == "member":
        return EXIT_OK
    if report.verdict == "nonmember":
        return EXIT_NEGATIVE
    return EXIT_BUDGET


def _generate(kind: str, seed: int, size: int, budget: int) -> Graph:
    if kind == "sp":
        return gen_series_parallel(seed, size)
    if kind == "line":
        base_order = max(4, 2 * (size // 6))
        base = random_cubic_graph(seed, base_order)
        return gen_line_of_subdivided_cubic(seed, base, double_one_edge=size % 2 == 1,
                                            budget=budget)
    if kind == "glue":
        half = max(2, size // 2)
        parts = [gen_series_parallel(seed * 2 + 1, half),
                 gen_series_parallel(seed * 2 + 2, max(2, size - half))]
        return gen_glue(seed, parts, mode="vertex" if seed % 2 == 0 else "edge",
                        budget=budget)
    if kind in ("diamond", "bowtie", "isk4"):
        return gen_nonmember(seed, kind, size)
    raise MalformedInputError(f"unknown generator kind {kind!r}")


def cmd_generate(args) -> int:
    g = _generate(args.kind, args.seed, args.size, args.budget)
    if args.format == "json":
        _emit(graph_to_json(g))
    else:
        sys.stdout.write(write_dimacs(g))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricolor",
        description="Decompose and 3-color graphs from the supported hereditary class.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, default=None):
        p.add_argument("--format", choices=["col", "json"], default=default,
                       help="input format (default: sniffed from the extension)")

    p = sub.add_parser("recognize", help="classify a graph into a structure branch")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("decompose", help="emit the clique cutset decomposition tree")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("color", help="emit a verified 3-coloring certificate")
    p.add_argument("file")
    add_format(p)
    p.add_argument("--jobs", type=int, default=1, help="parallel leaf coloring")
    p.add_argument("--verify-membership", action="store_true",
                   help="run the membership oracle before coloring")
    p.add_argument("--budget", type=int, default=_default_budget(),
                   help="membership oracle size budget")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("cert")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chi", help="exact chromatic number (small graphs)")
    p.add_argument("file")
    add_format(p)
    p.add_argument("--budget", type=int, default=20, help="maximum vertex count")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("membership", help="run the forbidden-pattern oracles")
    p.add_argument("file")
    add_format(p)
    p.add_argument("--budget", type=int, default=_default_budget(),
                   help="exact subdivision-oracle size budget")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("generate", help="emit a generated member or planted non-member")
    p.add_argument("--kind", required=True,
                   choices=["sp", "line", "glue", "diamond", "bowtie", "isk4"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=16)
    p.add_argument("--format", choices=["col", "json"], default="col")
    p.add_argument("--budget", type=int, default=_default_budget())
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except MalformedInputError as exc:
        logger.error("malformed input: %s", exc)
        return EXIT_MALFORMED
    except BudgetExceededError as exc:
        logger.error("budget exceeded: %s", exc)
        return EXIT_BUDGET
    except PipelineError as exc:
        logger.error("pipeline failure: %s", exc)
        if exc.payload:
            json.dump(exc.payload, sys.stderr, indent=2, sort_keys=True)
            sys.stderr.write("\n")
        if exc.payload.get("verdict") == "nonmember":
            return EXIT_NEGATIVE
        return EXIT_INTERNAL
    except (ContractViolationError, GenerationError) as exc:
        logger.error("%s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
