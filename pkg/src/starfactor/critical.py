"""Edge-chromatic criticality and the degree-counting statements audited on critical graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundExceededError, InvariantViolation
from .factors import k12_factor_with_edge, min_k12
from .fractional import FractionalMatching, canonical_max_fractional_matching, fractional_matching_number
from .graph import Edge, Graph, is_connected, norm_edge
from .matching import matching_number, two_factor_exists

DEFAULT_EDGE_BOUND = 40
DEFAULT_VERTEX_BOUND = 16
# Criticality of an extension needs one colouring search per edge; keep it small.
MEREDITH_EDGE_BUDGET = 24


# ---------------------------------------------------------------------------
# edge colouring


def _colorable(g: Graph, k: int) -> list[int] | None:
    """A proper ``k``-edge-colouring as a list aligned with ``g.edges``, or ``None``.

    Backtracking over edges ordered by decreasing degree sum.  A new colour
    is only ever the smallest unused one, which removes colour permutations.
    """
    edges = sorted(g.edges, key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))
    if not edges:
        return []
    if k <= 0:
        return None
    used = [0] * g.n
    colour = [0] * len(edges)
    full = (1 << k) - 1

    def place(i: int, top: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        free = full & ~(used[u] | used[v])
        limit = min(top + 1, k - 1)
        c = 0
        while free and c <= limit:
            if (free >> c) & 1:
                bit = 1 << c
                used[u] |= bit
                used[v] |= bit
                colour[i] = c
                if place(i + 1, max(top, c)):
                    return True
                used[u] &= ~bit
                used[v] &= ~bit
            c += 1
        return False

    if not place(0, -1):
        return None
    index = {e: i for i, e in enumerate(edges)}
    return [colour[index[e]] for e in g.edges]


def _is_overfull(g: Graph) -> bool:
    return g.edge_count > g.max_degree * (g.n // 2)


def chromatic_index(g: Graph, bound: int = DEFAULT_EDGE_BOUND) -> int:
    """Exact ``chi'(G)``; only ``Delta`` versus ``Delta + 1`` needs deciding."""
    if g.edge_count > bound:
        raise BoundExceededError(f"exact edge colouring limited to {bound} edges, graph has {g.edge_count}")
    delta = g.max_degree
    if delta == 0:
        return 0
    if not _is_overfull(g) and _colorable(g, delta) is not None:
        return delta
    if _colorable(g, delta + 1) is None:
        raise InvariantViolation("no (Delta+1)-edge-colouring found")
    return delta + 1


@dataclass(frozen=True)
class CriticalityReport:
    delta: int
    chi_prime: int
    is_critical: bool
    k: int | None

    def to_json(self) -> dict:
        return {"delta": self.delta, "chi_prime": self.chi_prime, "critical": self.is_critical, "k": self.k}


def is_k_critical(g: Graph, bound: int = DEFAULT_EDGE_BOUND) -> CriticalityReport:
    """Connected, class 2, and every single-edge deletion is ``Delta``-edge-colourable."""
    chi = chromatic_index(g, bound)
    delta = g.max_degree
    critical = (
        delta >= 1
        and chi == delta + 1
        and is_connected(g)
        and all(_colorable(g.without_edge(*e), delta) is not None for e in g.edges)
    )
    return CriticalityReport(delta, chi, critical, delta if critical else None)


# ---------------------------------------------------------------------------
# degree counting


def vizing_adjacency_holds(g: Graph) -> tuple[bool, Edge | None]:
    """Every edge ``xy`` has ``Delta - d(y) + 1`` neighbours of ``x`` other than ``y`` at degree ``Delta``.

    Returns the first failing ordered pair ``(x, y)`` when the condition fails.
    """
    delta = g.max_degree
    for x in g.vertices():
        for y in g.adj[x]:
            full = sum(1 for z in g.adj[x] if z != y and g.degree(z) == delta)
            if full < delta - g.degree(y) + 1:
                return False, (x, y)
    return True, None


@dataclass(frozen=True)
class SigmaProfile:
    sigma: dict[tuple[int, int], int]
    p_min: dict[int, int]
    p: dict[int, int]
    s: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "sigma": [[v, w, x] for (v, w), x in sorted(self.sigma.items())],
            "p_min": [self.p_min[v] for v in sorted(self.p_min)],
            "p": [self.p[v] for v in sorted(self.p)],
            "s": self.s,
        }


def sigma_profile(g: Graph) -> SigmaProfile:
    """``sigma(v, w)``: neighbours of ``w`` other than ``v`` with degree at least ``2Delta - d(v) - d(w) + 2``."""
    delta = g.max_degree
    sigma = {}
    for v in g.vertices():
        for w in g.adj[v]:
            threshold = 2 * delta - g.degree(v) - g.degree(w) + 2
            sigma[(v, w)] = sum(1 for z in g.adj[w] if z != v and g.degree(z) >= threshold)
    p_min, p = {}, {}
    for v in g.vertices():
        if not g.adj[v]:
            continue
        p_min[v] = min(sigma[(v, w)] for w in g.adj[v]) - delta + g.degree(v) - 1
        p[v] = min(p_min[v], g.degree(v) // 2 - 1)
    return SigmaProfile(sigma, p_min, p, k_deficiency(g))


def sigma_inequality_holds(g: Graph, profile: SigmaProfile | None = None) -> tuple[bool, Edge | None]:
    """``sigma(v, w) >= Delta - d(v) + 1`` for every ordered adjacent pair."""
    profile = profile or sigma_profile(g)
    delta = g.max_degree
    for (v, w), s in sorted(profile.sigma.items()):
        if s < delta - g.degree(v) + 1:
            return False, (v, w)
    return True, None


def p_lemma_check(g: Graph, profile: SigmaProfile | None = None) -> tuple[bool, int | None]:
    """At least ``d(v) - p - 1`` neighbours ``w`` with ``sigma(v, w) >= Delta - p - 1``, at every ``v``."""
    profile = profile or sigma_profile(g)
    delta = g.max_degree
    for v, p in sorted(profile.p.items()):
        good = sum(1 for w in g.adj[v] if profile.sigma[(v, w)] >= delta - p - 1)
        if good < g.degree(v) - p - 1:
            return False, v
    return True, None


def iso_ratio_bound_check(g: Graph, bound: int = DEFAULT_VERTEX_BOUND) -> tuple[bool, frozenset[int] | None]:
    """``iso(G - S) < (3/2 - 1/Delta)|S|`` for every non-empty ``S``, by exhaustive search.

    Compared in integers as ``2 Delta iso < (3 Delta - 2)|S|``.
    """
    if g.n > bound:
        raise BoundExceededError(f"exhaustive subset search limited to {bound} vertices")
    delta = g.max_degree
    if delta == 0:
        return (g.n == 0), (None if g.n == 0 else frozenset({0}))
    masks = g.masks
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        iso = 0
        for x in range(g.n):
            if not (mask >> x) & 1 and not masks[x] & ~mask:
                iso += 1
        if 2 * delta * iso >= (3 * delta - 2) * size:
            return False, frozenset(x for x in range(g.n) if (mask >> x) & 1)
    return True, None


def k_deficiency(g: Graph) -> int:
    """``Delta |V| - 2|E|``."""
    return g.max_degree * g.n - 2 * g.edge_count


# ---------------------------------------------------------------------------
# Meredith extension


def meredith_extension(g: Graph, v: int, k: int) -> tuple[Graph, list[int], list[int]]:
    """Replace ``v`` by ``K_{k,k-1}``, joining the ``i``-th neighbour of ``v`` to ``u_i``.

    The vertices of ``G - v`` keep their order as ``0..n-2``; then come
    ``u_1..u_k`` (degree ``k-1`` inside the bipartite block) and
    ``w_1..w_{k-1}``.  Returns the graph and the two vertex lists.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph")
    d = g.degree(v)
    if d > k:
        raise ValueError(f"d({v}) = {d} exceeds k = {k}")
    index = {x: i for i, x in enumerate(x for x in g.vertices() if x != v)}
    base = g.n - 1
    us = [base + i for i in range(k)]
    ws = [base + k + j for j in range(k - 1)]
    edges = [(index[a], index[b]) for a, b in g.edges if v not in (a, b)]
    edges += [(a, b) for a in us for b in ws]
    edges += [(index[x], us[i]) for i, x in enumerate(g.adj[v])]
    return Graph.from_edges(base + 2 * k - 1, edges), us, ws


def meredith_round_trip(g: Graph, v: int, edge_bound: int = MEREDITH_EDGE_BUDGET) -> dict:
    """Extend a critical graph at ``v`` with ``k = Delta(G)``, then check that
    criticality is preserved and that a fractional perfect matching of the
    extension contracts back to one of ``G``.

    Inside the inserted block the ``k - 1`` vertices of full degree draw all
    their weight from the other side, so exactly weight 1 leaves the block
    and contraction hands it to ``v``.  Status is ``"skipped"`` when the
    extension exceeds the colouring budget.
    """
    k = g.max_degree
    h, us, ws = meredith_extension(g, v, k)
    if h.edge_count > edge_bound:
        return {"status": "skipped", "reason": f"{h.edge_count} edges exceed the budget {edge_bound}"}
    out: dict = {"status": "passed", "order": h.n}
    crit_g = is_k_critical(g, edge_bound).is_critical
    crit_h = is_k_critical(h, edge_bound).is_critical
    out["critical_preserved"] = crit_g == crit_h
    if fractional_matching_number(h) * 2 == h.n:
        f = canonical_max_fractional_matching(h)
        index = {x: i for i, x in enumerate(x for x in g.vertices() if x != v)}
        back = {i: x for x, i in index.items()}
        weights: dict[Edge, Fraction] = {}
        for (a, b), w in f.weights.items():
            if a in back and b in back:
                weights[(back[a], back[b])] = w
        for i, x in enumerate(g.adj[v]):
            w = f.weight(index[x], us[i])
            if w:
                weights[norm_edge(x, v)] = w
        fg = FractionalMatching(g.n, weights)
        out["contracted_value"] = str(fg.value)
        out["fpm_recovered"] = fg.is_valid_in(g) and fg.value * 2 == g.n
    else:
        out["fpm_recovered"] = None
    if not out["critical_preserved"] or out["fpm_recovered"] is False:
        out["status"] = "failed"
    return out


# ---------------------------------------------------------------------------
# conjecture scan


def _independence_number(g: Graph) -> int:
    """Exact ``alpha(G)`` by branching on a vertex of maximum degree."""
    masks = g.masks

    def best(cand: int) -> int:
        if not cand:
            return 0
        v = max((x for x in range(g.n) if (cand >> x) & 1), key=lambda x: bin(masks[x] & cand).count("1"))
        if not masks[v] & cand:
            return 1 + best(cand & ~(1 << v))
        return max(1 + best(cand & ~(1 << v) & ~masks[v]), best(cand & ~(1 << v)))

    return best((1 << g.n) - 1)


def conjecture_scan(g: Graph, bound: int = DEFAULT_EDGE_BOUND) -> dict:
    """Evaluate every audited statement on a critical graph.

    Theorem-backed checks carry severity ``"bug"``; open conjectures carry
    ``"counterexample-candidate"``.
    """
    crit = is_k_critical(g, bound)
    if not crit.is_critical:
        raise ValueError("conjecture_scan requires a critical graph")
    n = g.n
    k = crit.k
    checks: dict[str, dict] = {}

    def record(name: str, holds: bool, severity: str, witness=None) -> None:
        entry = {"holds": bool(holds), "severity": severity}
        if witness is not None:
            entry["witness"] = witness
        checks[name] = entry

    ok, w = vizing_adjacency_holds(g)
    record("vizing_adjacency", ok, "bug", None if ok else list(w))
    profile = sigma_profile(g)
    ok, w = sigma_inequality_holds(g, profile)
    record("sigma_inequality", ok, "bug", None if ok else list(w))
    ok, w = p_lemma_check(g, profile)
    record("p_lemma", ok, "bug", w)
    ok, w = iso_ratio_bound_check(g)
    record("iso_ratio_bound", ok, "bug", None if ok else sorted(w))

    mu_f = fractional_matching_number(g)
    alpha = _independence_number(g)
    mk = min_k12(g)
    record("min_k12_identity", mk is not None and mk == n - 2 * mu_f, "bug", mk)
    record("min_k12_fifth", mk is not None and 5 * mk <= n, "bug", mk)
    record("alpha_three_fifths", 5 * alpha <= 3 * n, "bug", alpha)
    bad_edges = [list(e) for e in g.edges if k12_factor_with_edge(g, e) is None]
    record("every_edge_in_k12_factor", not bad_edges, "bug", bad_edges or None)
    s = k_deficiency(g)
    floor_sk = s // k
    record(
        "deficiency_bounds",
        2 * mu_f >= n - floor_sk and (mk is None or mk <= floor_sk) and 2 * alpha <= n + floor_sk,
        "bug",
    )
    record("fractional_perfect_matching", 2 * mu_f == n, "counterexample-candidate", str(mu_f))
    record("alpha_half", 2 * alpha <= n, "counterexample-candidate", alpha)
    record("two_factor", two_factor_exists(g), "counterexample-candidate")
    mu = matching_number(g)
    if 2 * mu != n:
        record("mu_f_exceeds_mu", mu_f > mu, "counterexample-candidate", [str(mu_f), mu])
    return {"graph6": g.to_graph6(), "k": k, "critical": True, "checks": checks}
