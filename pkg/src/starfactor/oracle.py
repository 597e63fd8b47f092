"""Brute-force reference implementations and small-graph corpus enumeration.

Everything here is deliberately naive and shares nothing with the main
algorithms beyond the graph type, so that agreement between the two is
meaningful evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator

from .errors import BoundExceededError, GraphFormatError
from .factors import StarCycleFactor
from .graph import Edge, Graph, is_connected, norm_edge, parse_graph6
from .matching import DegreeBounds, evaluate_gamma


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise BoundExceededError(what)


def _iso_after(g: Graph, s: frozenset[int]) -> int:
    return sum(1 for v in g.vertices() if v not in s and all(w in s for w in g.adj[v]))


# ---------------------------------------------------------------------------
# matchings


def brute_max_matching(g: Graph, bound: int = 24) -> int:
    """Largest set of pairwise disjoint edges, by include/exclude recursion over the edge list."""
    _require(g.edge_count <= bound, f"brute_max_matching limited to {bound} edges")
    edges = list(g.edges)

    def rec(i: int, used: frozenset[int]) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        best = rec(i + 1, used)
        if u not in used and v not in used:
            best = max(best, 1 + rec(i + 1, used | {u, v}))
        return best

    return rec(0, frozenset())


def _odd_cycles_from(g: Graph, v: int, free: frozenset[int]) -> Iterator[tuple[int, ...]]:
    """Odd cycles through ``v`` inside ``free``, each listed once (``v`` first, then the smaller neighbour)."""
    def walk(path: list[int]) -> Iterator[tuple[int, ...]]:
        last = path[-1]
        for w in g.adj[last]:
            if w == v and len(path) >= 3 and len(path) % 2 == 1 and path[1] < path[-1]:
                yield tuple(path)
            elif w in free and w not in path:
                path.append(w)
                yield from walk(path)
                path.pop()

    yield from walk([v])


def brute_fractional(g: Graph, bound: int = 18) -> Fraction:
    """Best value of a subgraph made of disjoint K2's (worth 1) and odd cycles (worth half their length)."""
    _require(g.edge_count <= bound, f"brute_fractional limited to {bound} edges")

    def rec(free: frozenset[int]) -> Fraction:
        if not free:
            return Fraction(0)
        v = min(free)
        rest = free - {v}
        best = rec(rest)
        for w in g.adj[v]:
            if w in rest:
                best = max(best, 1 + rec(rest - {w}))
        for cyc in _odd_cycles_from(g, v, rest):
            best = max(best, Fraction(len(cyc), 2) + rec(free - set(cyc)))
        return best

    return rec(frozenset(g.vertices()))


def brute_witness(g: Graph, bound: int = 16) -> tuple[int, frozenset[int]]:
    """``max iso(G - S) - |S|`` and the first maximiser by size, then lexicographic order."""
    _require(g.n <= bound, f"brute_witness limited to {bound} vertices")
    best, arg = None, frozenset()
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            s = frozenset(s)
            val = _iso_after(g, s) - k
            if best is None or val > best:
                best, arg = val, s
    return best, arg


def brute_iso_ratio(g: Graph, bound: int = 16) -> Fraction:
    """Smallest ``lambda`` (rational) with ``iso(G - S) <= lambda |S|`` for all non-empty ``S``."""
    _require(g.n <= bound, f"brute_iso_ratio limited to {bound} vertices")
    best = Fraction(0)
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            best = max(best, Fraction(_iso_after(g, frozenset(s)), k))
    return best


# ---------------------------------------------------------------------------
# star-cycle factors


def iter_factors(
    g: Graph, max_star: int | None = None, through_edge: Edge | None = None, bound: int = 8
) -> Iterator[StarCycleFactor]:
    """Every star-cycle factor, generated component by component from the smallest uncovered vertex."""
    _require(g.n <= bound, f"factor enumeration limited to {bound} vertices")
    cap = g.n if max_star is None else max_star
    target = norm_edge(*through_edge) if through_edge is not None else None

    def rec(free: frozenset[int], stars: list, cycles: list) -> Iterator[StarCycleFactor]:
        if not free:
            f = StarCycleFactor(g.n, tuple(stars), tuple(cycles))
            if target is None or target in f.edges:
                yield f
            return
        v = min(free)
        rest = free - {v}
        # v as a centre
        nbrs = [w for w in g.adj[v] if w in rest]
        for size in range(1, min(cap, len(nbrs)) + 1):
            for leaves in combinations(nbrs, size):
                stars.append((v, leaves))
                yield from rec(rest - set(leaves), stars, cycles)
                stars.pop()
        # v as a leaf of a star with at least two leaves
        if cap >= 2:
            for c in nbrs:
                others = [w for w in g.adj[c] if w in rest and w != c]
                for size in range(1, min(cap - 1, len(others)) + 1):
                    for more in combinations(others, size):
                        stars.append((c, (v,) + more))
                        yield from rec(rest - {c} - set(more), stars, cycles)
                        stars.pop()
        # v on a cycle
        for cyc in _cycles_from(g, v, rest):
            cycles.append(cyc)
            yield from rec(free - set(cyc), stars, cycles)
            cycles.pop()

    yield from rec(frozenset(g.vertices()), [], [])


def _cycles_from(g: Graph, v: int, free: frozenset[int]) -> Iterator[tuple[int, ...]]:
    def walk(path: list[int]) -> Iterator[tuple[int, ...]]:
        for w in g.adj[path[-1]]:
            if w == v and len(path) >= 3 and path[1] < path[-1]:
                yield tuple(path)
            elif w in free and w not in path:
                path.append(w)
                yield from walk(path)
                path.pop()

    yield from walk([v])


def brute_factor_enum(
    g: Graph, max_star: int | None = None, through_edge: Edge | None = None, bound: int = 8
) -> list[StarCycleFactor]:
    return list(iter_factors(g, max_star, through_edge, bound))


@dataclass(frozen=True)
class FactorSummary:
    """Aggregates of one full enumeration, so per-edge questions need a single pass."""

    exists: bool
    min_excess: int | None
    minimal_edges: frozenset[Edge]
    k12_exists: bool
    min_t2: int | None
    k12_edges: frozenset[Edge]
    min_lambda: int | None


def summarize_factors(g: Graph, bound: int = 8) -> FactorSummary:
    min_excess, minimal_edges = None, set()
    min_t2, k12_edges = None, set()
    min_lambda = None
    for f in iter_factors(g, bound=bound):
        ex = f.excess
        if min_excess is None or ex < min_excess:
            min_excess, minimal_edges = ex, set(f.edges)
        elif ex == min_excess:
            minimal_edges |= f.edges
        lam = f.lambda_achieved
        if min_lambda is None or lam < min_lambda:
            min_lambda = lam
        if lam <= 2:
            t2 = f.t.get(2, 0)
            min_t2 = t2 if min_t2 is None else min(min_t2, t2)
            k12_edges |= f.edges
    return FactorSummary(
        min_excess is not None,
        min_excess,
        frozenset(minimal_edges),
        min_t2 is not None,
        min_t2,
        frozenset(k12_edges),
        min_lambda,
    )


def brute_min_k12(g: Graph, bound: int = 8) -> int | None:
    best = None
    for f in iter_factors(g, max_star=2, bound=bound):
        t2 = f.t.get(2, 0)
        best = t2 if best is None else min(best, t2)
    return best


# ---------------------------------------------------------------------------
# other invariants


def brute_independence_number(g: Graph, bound: int = 20) -> int:
    """``alpha(G)`` by include/exclude over vertices in index order."""
    _require(g.n <= bound, f"brute_independence_number limited to {bound} vertices")

    def rec(v: int, chosen: frozenset[int]) -> int:
        if v == g.n:
            return 0
        best = rec(v + 1, chosen)
        if not any(w in chosen for w in g.adj[v]):
            best = max(best, 1 + rec(v + 1, chosen | {v}))
        return best

    return rec(0, frozenset())


def brute_gamma_min(h, b: DegreeBounds, bound: int = 7) -> int:
    """Minimum of ``gamma(S, T)`` over all disjoint pairs (each vertex in S, T or neither)."""
    _require(h.n <= bound, f"brute_gamma_min limited to {bound} vertices")
    best = None
    for labels in product(range(3), repeat=h.n):
        s = [v for v, x in enumerate(labels) if x == 1]
        t = [v for v, x in enumerate(labels) if x == 2]
        val = evaluate_gamma(h, b, s, t)
        best = val if best is None else min(best, val)
    return best if best is not None else 0


def brute_chromatic_index(g: Graph, bound: int = 12) -> int:
    """Smallest ``k`` admitting a proper edge colouring, by plain backtracking in edge-list order."""
    _require(g.edge_count <= bound, f"brute_chromatic_index limited to {bound} edges")
    edges = list(g.edges)
    k = 0
    while True:
        colours: list[int] = []

        def ok(i: int) -> bool:
            if i == len(edges):
                return True
            u, v = edges[i]
            for c in range(k):
                if all(not (colours[j] == c and ({u, v} & set(edges[j]))) for j in range(i)):
                    colours.append(c)
                    if ok(i + 1):
                        return True
                    colours.pop()
            return False

        if ok(0):
            return k
        k += 1


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusSpec:
    n_max: int
    connected_only: bool = False
    dedup: bool = True
    n_min: int = 1

    def __post_init__(self) -> None:
        if self.n_max > 10:
            raise BoundExceededError("exhaustive corpus limited to n_max <= 10")
        if self.n_min < 0 or self.n_min > self.n_max + 1:
            raise ValueError("invalid n_min")


def canonical_form(g: Graph) -> str:
    """Isomorphism-invariant graph6 string.

    Vertices are split into classes by iterated degree refinement; the
    result is the smallest adjacency encoding over all orderings that keep
    the classes in refinement order.
    """
    n = g.n
    colour = [len(a) for a in g.adj]
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in g.adj[v]))) for v in range(n)]
        order = sorted(set(sig))
        new = [order.index(s) for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells = [[v for v in range(n) if colour[v] == c] for c in sorted(set(colour))]
    best = None
    edges = g.edges
    for choice in product(*(permutations(c) for c in cells)):
        perm = {}
        pos = 0
        for cell in choice:
            for v in cell:
                perm[v] = pos
                pos += 1
        key = tuple(sorted(norm_edge(perm[u], perm[v]) for u, v in edges))
        if best is None or key < best:
            best = key
    return Graph.from_edges(n, best or ()).to_graph6()


def enumerate_graphs(spec: CorpusSpec) -> Iterator[Graph]:
    """All graphs with ``n_min <= n <= n_max`` vertices, one per isomorphism class when ``dedup``.

    Graphs on ``n`` vertices are produced by adding a vertex, with every
    possible neighbourhood, to each graph on ``n - 1`` vertices.  Output is
    ordered by ``n`` and then by canonical graph6 string.
    """
    layer = {canonical_form(Graph.from_edges(0, ())): Graph.from_edges(0, ())}
    for n in range(0, spec.n_max + 1):
        if n > 0:
            nxt: dict[str, Graph] = {}
            for g in layer.values():
                for mask in range(1 << (n - 1)):
                    edges = list(g.edges) + [(v, n - 1) for v in range(n - 1) if (mask >> v) & 1]
                    h = Graph.from_edges(n, edges)
                    key = canonical_form(h) if spec.dedup else h.to_graph6()
                    nxt.setdefault(key, h)
            layer = nxt
        if n < spec.n_min:
            continue
        for key in sorted(layer):
            g = parse_graph6(key) if spec.dedup else layer[key]
            if not spec.connected_only or is_connected(g):
                yield g


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    """Random spanning tree plus each other pair independently with probability ``p``."""
    if p is None:
        p = rng.uniform(0.1, 0.7)
    order = list(range(n))
    rng.shuffle(order)
    edges = {norm_edge(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def random_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    if p is None:
        p = rng.uniform(0.05, 0.8)
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def save_corpus(path: str | Path, graphs) -> None:
    Path(path).write_text("".join(g.to_graph6() + "\n" for g in graphs))


def load_corpus(path: str | Path) -> list[Graph]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            out.append(parse_graph6(line))
        except GraphFormatError as exc:
            raise GraphFormatError(f"corpus line {lineno}: {exc}", lineno) from None
    return out
