"""Per-graph identity checks comparing the polynomial routines with the brute-force oracles."""

from __future__ import annotations

from fractions import Fraction

from .edge_test import find_exclusion_certificate, forced_zero_weight
from .factors import build_minimal_factor, has_k12_factor, k12_factor_with_edge, min_k12
from .fractional import fractional_matching_number, max_fractional_matching_with_edge
from .gallai_edmonds import structure_report
from .graph import Graph
from .matching import deficiency
from .oracle import (
    brute_independence_number,
    brute_iso_ratio,
    brute_witness,
    summarize_factors,
)

CHECK_NAMES = (
    "identity_chain",
    "min_k12",
    "edge_exclusion",
    "fractional_edge",
    "independence_bound",
    "ratio_bounds",
    "forced_zero",
)

RATIO_PAIRS = ((3, 2), (2, 1), (5, 4))


def audit_graph(g: Graph, brute_factor_bound: int = 8) -> dict[str, bool | None]:
    """Evaluate every identity on one graph; ``None`` marks a check that does not apply."""
    out: dict[str, bool | None] = {name: None for name in CHECK_NAMES}
    report = structure_report(g)
    mu_f = fractional_matching_number(g)
    l_value = g.n - 2 * mu_f
    witness_value, _ = brute_witness(g)
    chain = [report.n, witness_value, l_value, deficiency(g) - report.nc]
    has_isolated = any(g.degree(v) == 0 for v in g.vertices())
    if not has_isolated and g.n > 0:
        chain.append(build_minimal_factor(g).excess)
    out["identity_chain"] = len(set(chain)) == 1

    alpha = brute_independence_number(g)
    out["independence_bound"] = 2 * alpha <= g.n + l_value - report.nc

    mk = min_k12(g)
    summary = summarize_factors(g, brute_factor_bound) if g.n <= brute_factor_bound else None
    if summary is not None:
        out["min_k12"] = mk == summary.min_t2 and (mk is None or mk == l_value)
    elif mk is not None:
        out["min_k12"] = mk == l_value

    ratio = brute_iso_ratio(g) if g.n > 0 else Fraction(0)
    ok = True
    for m, k in RATIO_PAIRS:
        if not has_isolated and ratio <= Fraction(m, k):
            if mk is None or (m + k) * mk > (m - k) * g.n or (m + k) * alpha > m * g.n:
                ok = False
    out["ratio_bounds"] = ok

    if g.edge_count and has_k12_factor(g):
        agree, implies = True, True
        for e in g.edges:
            poly = k12_factor_with_edge(g, e) is not None
            cert = find_exclusion_certificate(g, e) is None
            brute = e in summary.k12_edges if summary is not None else poly
            agree &= poly == cert == brute
            if not poly:
                implies &= forced_zero_weight(g, e)
        out["edge_exclusion"] = agree
        out["forced_zero"] = implies
    if g.edge_count and summary is not None and summary.exists:
        out["fractional_edge"] = all(
            (max_fractional_matching_with_edge(g, e) is not None) == (e in summary.minimal_edges)
            for e in g.edges
        )
    return out
