"""Command-line interface: ``starfactor {analyze,factor,edge-test,critical,verify}``.

Exit codes: 0 success, 1 input error, 2 bound exceeded, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

from . import critical as crit
from . import edge_test
from .audit import CHECK_NAMES, audit_graph
from .errors import BoundExceededError, GraphFormatError, InvariantViolation, NoFactorError
from .factors import build_minimal_factor, has_k12_factor, k12_factor_with_edge
from .fractional import canonical_max_fractional_matching, fractional_matching_number, rational_str
from .gallai_edmonds import structure_report
from .graph import Graph, norm_edge, parse_dimacs, parse_edge_list, parse_graph6
from .matching import deficiency
from .oracle import CorpusSpec, enumerate_graphs, load_corpus, random_connected_graph

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_INVARIANT = 0, 1, 2, 3

# Checks whose failure refutes a published claim rather than revealing a bug here.
INFORMATIONAL_CHECKS = {"forced_zero"}

BOUND_NAMES = {
    "certificate_vertices": edge_test.DEFAULT_CERTIFICATE_BOUND,
    "colouring_edges": crit.DEFAULT_EDGE_BOUND,
    "subset_vertices": crit.DEFAULT_VERTEX_BOUND,
    "meredith_edges": crit.MEREDITH_EDGE_BUDGET,
}


# ---------------------------------------------------------------------------
# input


def _read_graph(args: argparse.Namespace) -> Graph:
    if (args.input is None) == (args.g6 is None):
        raise GraphFormatError("give exactly one of --input or --g6")
    if args.g6 is not None:
        text, fmt = args.g6, args.format or "graph6"
    else:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise GraphFormatError(f"cannot read {args.input}: {exc.strerror}") from None
        fmt = args.format or _guess_format(text)
    if not text.strip():
        raise GraphFormatError("empty input")
    if fmt == "graph6":
        line = next(x for x in text.splitlines() if x.strip())
        return parse_graph6(line.strip())
    if fmt == "dimacs":
        return parse_dimacs(text)
    return parse_edge_list(text)


def _guess_format(text: str) -> str:
    first = next((x.strip() for x in text.splitlines() if x.strip()), "")
    if first.startswith(("p ", "c ", "e ")) or first == "c":
        return "dimacs"
    if " " in first or "\t" in first:
        return "edgelist"
    return "graph6"


def _parse_edge(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise GraphFormatError(f"--edge expects 'u,v', got {text!r}") from None
    return u, v


def _parse_bounds(items: Iterable[str]) -> dict[str, int]:
    bounds = dict(BOUND_NAMES)
    for item in items or ():
        name, _, value = item.partition("=")
        if name not in bounds:
            raise GraphFormatError(f"unknown bound {name!r}; known: {', '.join(sorted(bounds))}")
        try:
            val = int(value)
        except ValueError:
            raise GraphFormatError(f"bound {name} needs an integer value") from None
        if val < 1:
            raise GraphFormatError(f"bound {name} must be at least 1")
        bounds[name] = val
    return bounds


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("STARFACTOR_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: list) -> list:
    """Ordered map, fanned out over processes when ``STARFACTOR_THREADS`` > 1."""
    workers = min(_threads(), len(items) or 1)
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(g: Graph, args: argparse.Namespace, bounds: dict) -> tuple[dict, int]:
    r = structure_report(g)
    h = canonical_max_fractional_matching(g, r)
    out = {
        "n_vertices": g.n,
        "mu": r.ge.mu,
        "def": deficiency(g),
        "mu_f": rational_str(fractional_matching_number(g)),
        "D": sorted(r.ge.D),
        "A": sorted(r.ge.A),
        "C": sorted(r.ge.C),
        "d_components": r.ge.to_json()["d_components"],
        "nc": r.nc,
        "n": r.n,
        "d_minus": sorted(r.d_minus),
        "d_plus": sorted(r.d_plus),
        "witness": sorted(r.witness),
        "matching": [list(e) for e in r.M.edges],
        "fractional_matching": h.to_json(),
    }
    return out, EXIT_OK


def _no_factor_reason(g: Graph, cap: int, bound: int) -> dict:
    """Explain a missing factor by the first set ``S`` with ``iso(G - S) > cap * |S|``."""
    out: dict = {"factor": None, "reason": f"iso>{cap}|S|"}
    if g.n > bound:
        return out
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            mask = sum(1 << x for x in s)
            iso = sum(1 for v in g.vertices() if not (mask >> v) & 1 and not g.masks[v] & ~mask)
            if iso > cap * k:
                out.update(S=list(s), iso=iso)
                return out
    return out


def cmd_factor(g: Graph, args: argparse.Namespace, bounds: dict) -> tuple[dict, int]:
    if args.edge is not None:
        u, v = _parse_edge(args.edge)
        if not g.has_edge(u, v):
            raise GraphFormatError(f"({u}, {v}) is not an edge")
        if not has_k12_factor(g):
            return _no_factor_reason(g, 2, bounds["subset_vertices"]), EXIT_OK
        f = k12_factor_with_edge(g, (u, v))
        if f is not None:
            return {"excluded": False, "edge": [u, v], "factor": f.to_json()}, EXIT_OK
        out: dict = {"excluded": True, "edge": list(norm_edge(u, v)), "factor": None}
        if g.n <= bounds["certificate_vertices"]:
            cert = edge_test.find_exclusion_certificate(g, (u, v), bounds["certificate_vertices"])
            out["certificate"] = cert.to_json() if cert else None
        return out, EXIT_OK
    try:
        f = build_minimal_factor(g, args.max_star)
    except NoFactorError as exc:
        return {"factor": None, "reason": str(exc)}, EXIT_OK
    if f is None:
        return _no_factor_reason(g, args.max_star, bounds["subset_vertices"]), EXIT_OK
    return {"factor": f.to_json(), "n": f.excess, "t": f.to_json()["t"], "lambda_achieved": f.lambda_achieved}, EXIT_OK


def cmd_edge_test(g: Graph, args: argparse.Namespace, bounds: dict) -> tuple[dict, int]:
    edges = [_parse_edge(args.edge)] if args.edge is not None else list(g.edges)
    for u, v in edges:
        if not g.has_edge(u, v):
            raise GraphFormatError(f"({u}, {v}) is not an edge")
    if not has_k12_factor(g):
        return {"factor_exists": False, "edges": []}, EXIT_OK
    rows = []
    for u, v in edges:
        row = {
            "edge": list(norm_edge(u, v)),
            "in_k12_factor": edge_test.edge_in_some_k12_factor(g, (u, v)),
            "forced_zero_weight": edge_test.forced_zero_weight(g, (u, v)),
        }
        if not row["in_k12_factor"] and g.n <= bounds["certificate_vertices"]:
            cert = edge_test.find_exclusion_certificate(g, (u, v), bounds["certificate_vertices"])
            row["certificate"] = cert.to_json() if cert else None
        rows.append(row)
    return {"factor_exists": True, "edges": rows}, EXIT_OK


def _critical_one(item: tuple[str, dict]) -> dict:
    g6, bounds = item
    g = parse_graph6(g6)
    rep = crit.is_k_critical(g, bounds["colouring_edges"])
    if not rep.is_critical:
        return {"graph6": g6, "k": None, "critical": False, "report": rep.to_json()}
    out = crit.conjecture_scan(g, bounds["colouring_edges"])
    out["report"] = rep.to_json()
    v = min(g.vertices(), key=lambda x: (g.degree(x), x))
    out["meredith"] = crit.meredith_round_trip(g, v, bounds["meredith_edges"])
    return out


def _scan_failures(reports: list[dict]) -> dict:
    bugs, candidates = [], []
    for r in reports:
        for name, c in r.get("checks", {}).items():
            if not c["holds"]:
                (bugs if c["severity"] == "bug" else candidates).append({"graph6": r["graph6"], "check": name})
        if r.get("meredith", {}).get("status") == "failed":
            bugs.append({"graph6": r["graph6"], "check": "meredith"})
    return {"bugs": bugs, "counterexample_candidates": candidates}


def cmd_critical(args: argparse.Namespace, bounds: dict) -> tuple[dict, int]:
    if args.scan is not None:
        graphs = [g.to_graph6() for g in enumerate_graphs(CorpusSpec(args.scan, connected_only=True))]
        results = _pmap(_critical_one, [(x, bounds) for x in graphs])
        found = [r for r in results if r["critical"]]
        summary = _scan_failures(found)
        out = {"n_max": args.scan, "graphs_scanned": len(graphs), "critical_found": len(found), "reports": found, **summary}
        return out, EXIT_INVARIANT if summary["bugs"] else EXIT_OK
    g = _read_graph(args)
    r = _critical_one((g.to_graph6(), bounds))
    summary = _scan_failures([r]) if r["critical"] else {"bugs": [], "counterexample_candidates": []}
    return {**r, **summary}, EXIT_INVARIANT if summary["bugs"] else EXIT_OK


def _audit_one(g6: str) -> dict:
    return audit_graph(parse_graph6(g6))


def cmd_verify(args: argparse.Namespace, bounds: dict) -> tuple[dict, int]:
    if args.input is not None:
        graphs = [g.to_graph6() for g in load_corpus(args.input)]
        source = str(args.input)
    else:
        n_max = 6 if args.scan is None else args.scan
        graphs = [g.to_graph6() for g in enumerate_graphs(CorpusSpec(n_max))]
        source = f"all graphs with n <= {n_max}"
    if args.samples:
        rng = random.Random(args.seed)
        graphs += [random_connected_graph(rng.randint(8, 10), rng).to_graph6() for _ in range(args.samples)]
    results = _pmap(_audit_one, graphs)
    matrix = {}
    failures = []
    for name in CHECK_NAMES:
        vals = [r[name] for r in results]
        matrix[name] = {
            "checked": sum(v is not None for v in vals),
            "failed": sum(v is False for v in vals),
            "informational": name in INFORMATIONAL_CHECKS,
        }
        failures += [{"graph6": g6, "check": name} for g6, v in zip(graphs, vals) if v is False]
    hard = [f for f in failures if f["check"] not in INFORMATIONAL_CHECKS]
    out = {"source": source, "graphs": len(graphs), "checks": matrix, "failures": failures, "passed": not hard}
    return out, EXIT_INVARIANT if hard else EXIT_OK


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file (graph6, edge list or DIMACS)")
    common.add_argument("--g6", help="inline graph6 string")
    common.add_argument("--format", choices=["graph6", "edgelist", "dimacs"], help="input format (default: guessed)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    common.add_argument(
        "--bound-override", action="append", metavar="NAME=VALUE",
        help=f"raise an exhaustive-search bound ({', '.join(sorted(BOUND_NAMES))})",
    )

    parser = argparse.ArgumentParser(prog="starfactor", description="Fractional matchings, star-cycle factors and critical-graph audits.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="matching numbers and Gallai-Edmonds structure")
    p = sub.add_parser("factor", parents=[common], help="minimal star-cycle factor, optionally through an edge")
    p.add_argument("--edge", help="u,v: require this edge in a factor with stars of at most two leaves")
    p.add_argument("--max-star", type=int, help="largest star allowed")
    p = sub.add_parser("edge-test", parents=[common], help="per-edge factor membership and forced-zero test")
    p.add_argument("--edge", help="u,v (default: every edge)")
    p = sub.add_parser("critical", parents=[common], help="criticality and conjecture audit")
    p.add_argument("--scan", type=int, help="audit every connected graph up to this order")
    p = sub.add_parser("verify", parents=[common], help="compare polynomial routines with brute force on a corpus")
    p.add_argument("--scan", type=int, help="corpus of all graphs up to this order (default 6)")
    p.add_argument("--samples", type=int, default=0, help="additional random connected graphs on 8-10 vertices")
    return parser


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x)}" for x in obj)
    return f"{pad}{obj}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bounds = _parse_bounds(args.bound_override)
        if getattr(args, "max_star", None) is not None and args.max_star < 1:
            raise GraphFormatError("--max-star must be at least 1")
        if args.command == "critical":
            out, code = cmd_critical(args, bounds)
        elif args.command == "verify":
            out, code = cmd_verify(args, bounds)
        else:
            g = _read_graph(args)
            handler = {"analyze": cmd_analyze, "factor": cmd_factor, "edge-test": cmd_edge_test}[args.command]
            out, code = handler(g, args, bounds)
    except (GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundExceededError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    print(json.dumps(out, indent=2) if args.json else _text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
