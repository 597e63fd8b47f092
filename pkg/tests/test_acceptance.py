"""Acceptance suite: one PASS/FAIL line per criterion.

Every criterion is an exact identity over rationals or integers, so the
tolerance is pinned at zero.  Run with ``pytest tests/test_acceptance.py -v``
(lines appear in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from starfactor.critical import chromatic_index, conjecture_scan, is_k_critical
from starfactor.edge_test import find_exclusion_certificate, forced_zero_weight
from starfactor.factors import build_minimal_factor, has_k12_factor, k12_factor_with_edge, min_k12
from starfactor.fractional import (
    canonical_max_fractional_matching,
    canonicalize,
    fractional_matching_number,
    is_canonical,
    max_fractional_matching_with_edge,
)
from starfactor.gallai_edmonds import structure_report
from starfactor.graph import isolated_count, parse_graph6
from starfactor.matching import deficiency
from starfactor.named import cycle, double_star, long_double_star, paw, path, petersen, unbalanced_double_star
from starfactor.oracle import (
    CorpusSpec,
    canonical_form,
    brute_independence_number,
    brute_min_k12,
    brute_witness,
    enumerate_graphs,
    random_connected_graph,
    random_graph,
    summarize_factors,
)

TOLERANCE = 0  # exact arithmetic throughout
SEED = 20240611
N_RANDOM_CHAIN = 500
N_RANDOM_CANONICAL = 1000

RESULTS: list[str] = []


def _record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})"
    RESULTS.append(line)
    print(line)


@lru_cache(maxsize=None)
def connected_corpus() -> tuple:
    return tuple(enumerate_graphs(CorpusSpec(7, connected_only=True)))


@lru_cache(maxsize=None)
def random_chain_corpus() -> tuple:
    rng = random.Random(SEED)
    return tuple(random_connected_graph(rng.randint(8, 12), rng) for _ in range(N_RANDOM_CHAIN))


@lru_cache(maxsize=None)
def factor_summary(g6: str):
    return summarize_factors(parse_graph6(g6))


def _l(g) -> Fraction:
    return g.n - 2 * fractional_matching_number(g)


def check_identity_chain() -> tuple[bool, str]:
    bad = []
    graphs = connected_corpus() + random_chain_corpus()
    for g in graphs:
        r = structure_report(g)
        witness_value, _ = brute_witness(g)
        chain = {_l(g), witness_value, deficiency(g) - r.nc, r.n}
        if g.n >= 2:
            chain.add(build_minimal_factor(g).excess)
        if len(chain) != 1:
            bad.append(g.to_graph6())
    return not bad, f"{len(graphs)} graphs, mismatches={bad[:5]}"


def check_min_k12() -> tuple[bool, str]:
    bad, brute_checked = [], 0
    for g in connected_corpus() + random_chain_corpus():
        mk = min_k12(g)
        if g.n <= 8:
            brute_checked += 1
            if mk != brute_min_k12(g):
                bad.append(g.to_graph6())
                continue
        if mk is not None and mk != _l(g):
            bad.append(g.to_graph6())
    return not bad, f"brute arm on {brute_checked} graphs, mismatches={bad[:5]}"


def check_edge_equivalence() -> tuple[bool, str]:
    bad, edges = [], 0
    for g in connected_corpus():
        if g.n < 2 or not has_k12_factor(g):
            continue
        summary = factor_summary(g.to_graph6())
        for e in g.edges:
            edges += 1
            poly = k12_factor_with_edge(g, e) is not None
            brute = e in summary.k12_edges
            no_cert = find_exclusion_certificate(g, e) is None
            if not poly == brute == no_cert:
                bad.append((g.to_graph6(), e))
    fixtures = []
    for g, e, expected in (
        (double_star(), (0, 1), lambda s: 2 * s),
        (unbalanced_double_star(), (0, 1), lambda s: 2 * s - 1),
        (long_double_star(), (4, 5), lambda s: 2 * s - 2),
    ):
        cert = find_exclusion_certificate(g, e)
        ok = cert is not None and cert.iso_count == expected(len(cert.S)) == isolated_count(g, cert.S)
        ok &= k12_factor_with_edge(g, e) is None
        fixtures.append(ok)
    return not bad and all(fixtures), f"{edges} edges, mismatches={bad[:5]}, tightness fixtures={fixtures}"


def check_fractional_edge() -> tuple[bool, str]:
    bad, edges = [], 0
    for g in connected_corpus():
        if g.n < 2:
            continue
        summary = factor_summary(g.to_graph6())
        for e in g.edges:
            edges += 1
            if (max_fractional_matching_with_edge(g, e) is not None) != (e in summary.minimal_edges):
                bad.append((g.to_graph6(), e))
    return not bad, f"{edges} edges, mismatches={bad[:5]}"


CRITERION_5_CHECKS = (
    "vizing_adjacency",
    "sigma_inequality",
    "p_lemma",
    "iso_ratio_bound",
    "min_k12_fifth",
    "alpha_three_fifths",
    "every_edge_in_k12_factor",
    "fractional_perfect_matching",
)


def check_critical_audit() -> tuple[bool, str]:
    found, failures = [], []
    for g in connected_corpus():
        if g.edge_count == 0 or not is_k_critical(g).is_critical:
            continue
        found.append(g.to_graph6())
        scan = conjecture_scan(g)
        for name, c in scan["checks"].items():
            if not c["holds"] and (name in CRITERION_5_CHECKS or c["severity"] == "bug"):
                failures.append((g.to_graph6(), name))
    odd = {cycle(k).to_graph6() for k in (3, 5, 7)}
    canon = {canonical_form(parse_graph6(x)) for x in found}
    has_odd = all(canonical_form(parse_graph6(x)) in canon for x in odd)
    return has_odd and not failures, f"{len(found)} critical graphs, C3/C5/C7 found={has_odd}, failures={failures[:5]}"


def check_canonical_form() -> tuple[bool, str]:
    rng = random.Random(SEED + 1)
    bad = []
    for _ in range(N_RANDOM_CANONICAL):
        g = random_graph(rng.randint(1, 12), rng)
        h = canonical_max_fractional_matching(g)
        ok = h.is_valid_in(g) and all(x <= 1 for x in h.loads())
        ok &= h.value == fractional_matching_number(g)
        ok &= is_canonical(g, h)
        ok &= canonicalize(g, h) == h
        if not ok:
            bad.append(g.to_graph6())
    return not bad, f"{N_RANDOM_CANONICAL} graphs, failures={bad[:5]}"


def check_fixtures() -> tuple[bool, str]:
    p = petersen()
    values = {
        "petersen_mu_f": fractional_matching_number(p) == 5,
        "petersen_chi": chromatic_index(p) == 4,
        "petersen_alpha": brute_independence_number(p) == 4,
        "paw_forced_zero": forced_zero_weight(paw(), (0, 1)),
    }
    r = structure_report(path(3))
    values["p3_report"] = r.ge.D == {0, 2} and r.ge.A == {1} and r.n == 1
    return all(values.values()), ", ".join(f"{k}={v}" for k, v in values.items())


CRITERIA = (
    (1, "identity chain l = witness value = def - nc = factor excess", check_identity_chain),
    (2, "min_k12 = l = brute minimum", check_min_k12),
    (3, "edge exclusion: polynomial = brute = certificate", check_edge_equivalence),
    (4, "fractional edge usage = edge in a minimal factor", check_fractional_edge),
    (5, "critical-graph audit on connected n <= 7", check_critical_audit),
    (6, "canonical maximum fractional matchings", check_canonical_form),
    (7, "fixture values", check_fixtures),
)


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check):
    start = time.perf_counter()
    ok, detail = check()
    _record(number, title, ok, f"{detail}; {time.perf_counter() - start:.1f}s")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, check in CRITERIA:
        start = time.perf_counter()
        ok, detail = check()
        _record(number, title, ok, f"{detail}; {time.perf_counter() - start:.1f}s")
        failed += not ok
    sys.exit(1 if failed else 0)
