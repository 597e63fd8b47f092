"""Integral matchings: blossom maximum matching, bipartite assignment and (g,f)-factors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .graph import Edge, Graph, MultiGraph
from .errors import InvariantViolation, NoFactorError


@dataclass(frozen=True)
class Matching:
    """A matching stored as a mate array; ``mate[v] == -1`` means ``v`` is exposed."""

    mate: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Matching":
        mate = [-1] * n
        for u, v in edges:
            if mate[u] != -1 or mate[v] != -1:
                raise ValueError(f"edge ({u}, {v}) shares a vertex with another matching edge")
            mate[u], mate[v] = v, u
        return cls(tuple(mate))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((v, w) for v, w in enumerate(self.mate) if v < w)

    @property
    def size(self) -> int:
        return sum(1 for v, w in enumerate(self.mate) if v < w)

    def exposed(self) -> list[int]:
        return [v for v, w in enumerate(self.mate) if w == -1]

    def is_valid_in(self, g: Graph) -> bool:
        return len(self.mate) == g.n and all(
            (w == -1 or (self.mate[w] == v and g.has_edge(v, w))) for v, w in enumerate(self.mate)
        )


@dataclass(frozen=True)
class DegreeBounds:
    g: tuple[int, ...]
    f: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.g) != len(self.f):
            raise ValueError("g and f must have the same length")
        for v, (lo, hi) in enumerate(zip(self.g, self.f)):
            if not 0 <= lo <= hi:
                raise ValueError(f"invalid bounds at vertex {v}: g={lo}, f={hi}")

    @classmethod
    def uniform(cls, n: int, lo: int, hi: int) -> "DegreeBounds":
        return cls((lo,) * n, (hi,) * n)


# ---------------------------------------------------------------------------
# Edmonds' blossom algorithm


def _find_augmenting_path(adj: Sequence[Sequence[int]], mate: list[int], root: int) -> int:
    """Grow an alternating forest from ``root``; on success ``mate`` is augmented.

    Returns the far end of the augmenting path, or -1 if none exists.
    """
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    end = to
                    while end != -1:
                        pv = parent[end]
                        nxt = mate[pv]
                        mate[end], mate[pv] = pv, end
                        end = nxt
                    return to
                used[mate[to]] = True
                queue.append(mate[to])
    return -1


def _max_matching_adj(adj: Sequence[Sequence[int]], initial: Sequence[int] | None = None) -> list[int]:
    n = len(adj)
    if initial is None:
        mate = [-1] * n
        for v in range(n):
            if mate[v] == -1:
                for w in adj[v]:
                    if mate[w] == -1:
                        mate[v], mate[w] = w, v
                        break
    else:
        mate = list(initial)
    for v in range(n):
        if mate[v] == -1:
            _find_augmenting_path(adj, mate, v)
    return mate


def maximum_matching(g: Graph, initial: Matching | None = None) -> Matching:
    """Maximum cardinality matching via Edmonds' blossom algorithm.

    Starts from a greedy matching (smallest-index partners first) unless an
    ``initial`` matching is supplied, then augments from exposed vertices in
    increasing order.  The result is deterministic for a fixed input.
    """
    mate = _max_matching_adj(g.adj, None if initial is None else initial.mate)
    return Matching(tuple(mate))


def matching_number(g: Graph) -> int:
    return maximum_matching(g).size


def deficiency(g: Graph) -> int:
    return g.n - 2 * matching_number(g)


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and 2 * matching_number(g) == g.n


# ---------------------------------------------------------------------------
# bipartite assignment


@dataclass(frozen=True)
class Assignment:
    pairs: tuple[tuple[int, int], ...]
    weight: int


def bipartite_max_weight_matching(
    left: Iterable[int],
    right: Iterable[int],
    edges: Iterable[tuple[int, int]],
    weights: dict[tuple[int, int], int] | None = None,
    saturate_left: bool = False,
) -> Assignment:
    """Maximum weight bipartite matching with non-negative integer weights.

    With ``saturate_left`` every left vertex must be matched and the weight is
    maximised among such matchings; :class:`NoFactorError` is raised when no
    left-saturating matching exists.  Missing weights default to 0.
    """
    left, right = list(left), list(right)
    weights = weights or {}
    li = {v: i for i, v in enumerate(left)}
    ri = {v: j for j, v in enumerate(right)}
    ncols = len(right) + (0 if saturate_left else len(left))
    if not left:
        return Assignment((), 0)
    # A left-saturating assignment needs |R| >= |L|.
    if saturate_left and len(right) < len(left):
        raise NoFactorError("more left vertices than right vertices")
    forbidden = -1.0e9
    # Under saturate_left every real edge is worth more than any weight total,
    # so cardinality on the left is maximised first.
    scale = 1.0 + 2 * sum(max(0, w) for w in weights.values()) if saturate_left else 0.0
    cost = np.full((len(left), ncols), forbidden)
    for a, b in edges:
        if a not in li or b not in ri:
            raise ValueError(f"edge ({a}, {b}) does not join left to right")
        w = weights.get((a, b), 0)
        if w < 0:
            raise ValueError("weights must be non-negative")
        cost[li[a], ri[b]] = scale + w
    if not saturate_left:
        for i in range(len(left)):
            cost[i, len(right) + i] = 0.0
    rows, cols = linear_sum_assignment(cost, maximize=True)
    pairs = []
    total = 0
    for i, j in zip(rows, cols):
        if cost[i, j] == forbidden:
            if saturate_left:
                raise NoFactorError("no matching saturates the left side")
            continue
        if j >= len(right):
            continue
        pairs.append((left[i], right[j]))
        total += weights.get((left[i], right[j]), 0)
    return Assignment(tuple(sorted(pairs)), total)


# ---------------------------------------------------------------------------
# (g,f)-factors


def gf_factor(h: Graph | MultiGraph, b: DegreeBounds) -> list[Edge] | None:
    """Return the edge multiset of a (g,f)-factor of ``h``, or ``None``.

    Reduction to perfect matching.  Each edge ``k = xy`` contributes two stub
    vertices ``s(k,x)`` and ``s(k,y)`` joined by an edge; matching the two
    stubs to each other means ``k`` is in the factor.  Every vertex ``x`` of
    degree ``d`` receives ``d - min(f,d)`` mandatory and ``min(f,d) - g``
    optional inner vertices, each joined to all stubs of ``x``: a stub that is
    matched to an inner vertex marks an unused edge, so the number of used
    edges at ``x`` lies in ``[g, min(f,d)]``.  Optional inner vertices may
    stay out of the factor by pairing with a slack clique whose size has the
    parity that makes the whole gadget even; the clique pairs up whatever is
    left of itself.
    """
    hedges = list(h.edges)
    n = h.n
    if len(b.g) != n:
        raise ValueError("degree bounds do not match the graph order")
    deg = [0] * n
    stubs: list[list[int]] = [[] for _ in range(n)]
    gadget: list[list[int]] = []

    def new_vertex() -> int:
        gadget.append([])
        return len(gadget) - 1

    def link(a: int, c: int) -> None:
        gadget[a].append(c)
        gadget[c].append(a)

    for x, y in hedges:
        sx, sy = new_vertex(), new_vertex()
        link(sx, sy)
        stubs[x].append(sx)
        stubs[y].append(sy)
        deg[x] += 1
        deg[y] += 1
    optional: list[int] = []
    for x in range(n):
        lo, hi = b.g[x], min(b.f[x], deg[x])
        if lo > deg[x]:
            return None
        for k in range(deg[x] - lo):
            z = new_vertex()
            for s in stubs[x]:
                link(z, s)
            if k >= deg[x] - hi:
                optional.append(z)
    q = len(optional) + (len(gadget) + len(optional)) % 2
    clique = [new_vertex() for _ in range(q)]
    for a, c in combinations(clique, 2):
        link(a, c)
    for a in clique:
        for z in optional:
            link(a, z)
    for nbrs in gadget:
        nbrs.sort()

    mate = _max_matching_adj(gadget)
    if any(m == -1 for m in mate):
        return None
    factor = [hedges[k] for k in range(len(hedges)) if mate[2 * k] == 2 * k + 1]
    fdeg = [0] * n
    for x, y in factor:
        fdeg[x] += 1
        fdeg[y] += 1
    for x in range(n):
        if not b.g[x] <= fdeg[x] <= b.f[x]:
            raise InvariantViolation(f"gadget factor violates bounds at vertex {x}")
    return factor


def gf_factor_exists(h: Graph | MultiGraph, b: DegreeBounds) -> bool:
    return gf_factor(h, b) is not None


def two_factor_exists(g: Graph) -> bool:
    return gf_factor(g, DegreeBounds.uniform(g.n, 2, 2)) is not None


def evaluate_gamma(
    h: Graph | MultiGraph,
    b: DegreeBounds,
    s: Iterable[int],
    t: Iterable[int],
) -> int:
    """Lovász's deficiency ``gamma(S, T)`` including the parity term ``q*(S, T)``."""
    s, t = frozenset(s), frozenset(t)
    if s & t:
        raise ValueError("S and T must be disjoint")
    adj = h.adj
    value = sum(b.f[v] for v in s)
    value += sum(len(adj[v]) - b.g[v] for v in t)
    value -= sum(1 for v in s for w in adj[v] if w in t)

    removed = s | t
    rest = [v for v in range(h.n) if v not in removed]
    rest_set = set(rest)
    seen: set[int] = set()
    q_star = 0
    for start in rest:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in rest_set and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        if all(b.g[v] == b.f[v] for v in comp):
            parity = sum(b.f[v] for v in comp) + sum(1 for v in comp for w in adj[v] if w in t)
            if parity % 2 == 1:
                q_star += 1
    return value - q_star
