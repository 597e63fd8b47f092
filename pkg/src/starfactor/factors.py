"""Star-cycle factors: minimal factors, ``min(G, K_{1,2})`` and [1,2]-factor surgery."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import ceil
from typing import Iterable

from .errors import InvariantViolation, NoFactorError
from .fractional import canonical_max_fractional_matching, odd_circuits
from .gallai_edmonds import StructureReport, structure_report
from .graph import Edge, Graph, connected_components, contract_edge, induced_subgraph, norm_edge
from .matching import DegreeBounds, gf_factor


def _canonical_cycle(cyc: Iterable[int]) -> tuple[int, ...]:
    cyc = list(cyc)
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return tuple(cyc)


def _canonical_star(center: int, leaves: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    leaves = sorted(leaves)
    if len(leaves) == 1 and leaves[0] < center:
        center, leaves = leaves[0], [center]
    return center, tuple(leaves)


@dataclass(frozen=True)
class StarCycleFactor:
    """Spanning set of stars ``(center, leaves)`` and cycles (vertex sequences).

    A ``K_{1,1}`` is stored with its smaller endpoint as center.  Stars and
    cycles are each sorted by smallest vertex.
    """

    order: int
    stars: tuple[tuple[int, tuple[int, ...]], ...]
    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        stars = sorted((_canonical_star(c, ls) for c, ls in self.stars), key=lambda s: min(s[0], *s[1]))
        cycles = sorted((_canonical_cycle(c) for c in self.cycles), key=lambda c: c[0])
        object.__setattr__(self, "stars", tuple(stars))
        object.__setattr__(self, "cycles", tuple(cycles))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Edge]) -> "StarCycleFactor":
        """Split a spanning edge set into star and cycle components."""
        sub = Graph.from_edges(order, edges)
        stars, cycles = [], []
        for comp in connected_components(sub):
            if len(comp) == 1:
                raise ValueError(f"vertex {min(comp)} is not covered")
            degs = {v: sub.degree(v) for v in comp}
            m = sum(degs.values()) // 2
            if len(comp) >= 3 and all(d == 2 for d in degs.values()):
                start = min(comp)
                seq, prev, cur = [start], -1, start
                while True:
                    nxt = next(w for w in sub.adj[cur] if w != prev)
                    if nxt == start:
                        break
                    seq.append(nxt)
                    prev, cur = cur, nxt
                cycles.append(seq)
            elif m == len(comp) - 1 and max(degs.values()) == m:
                center = min(v for v in comp if degs[v] == m)
                stars.append((center, [v for v in comp if v != center]))
            else:
                raise ValueError(f"component {sorted(comp)} is neither a star nor a cycle")
        return cls(order, tuple(stars), tuple(cycles))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        out = set()
        for c, leaves in self.stars:
            out.update(norm_edge(c, x) for x in leaves)
        for cyc in self.cycles:
            out.update(norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        return frozenset(out)

    def contains_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    @property
    def t(self) -> dict[int, int]:
        """``t[i]`` is the number of ``K_{1,i}`` components."""
        out: dict[int, int] = {}
        for _, leaves in self.stars:
            out[len(leaves)] = out.get(len(leaves), 0) + 1
        return dict(sorted(out.items()))

    @property
    def excess(self) -> int:
        """``sum (i - 1) t_i``."""
        return sum((i - 1) * c for i, c in self.t.items())

    @property
    def lambda_achieved(self) -> int:
        return max((len(ls) for _, ls in self.stars), default=0)

    def validate(self, g: Graph, induced: bool = True) -> None:
        """Raise :class:`InvariantViolation` unless this is a star-cycle factor of ``g``."""
        if self.order != g.n:
            raise InvariantViolation("factor order differs from the graph order")
        seen: set[int] = set()
        parts = [(c,) + ls for c, ls in self.stars] + list(self.cycles)
        for part in parts:
            if seen & set(part) or len(set(part)) != len(part):
                raise InvariantViolation(f"component {part} overlaps another component")
            seen.update(part)
        if seen != set(range(g.n)):
            raise InvariantViolation("factor is not spanning")
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise InvariantViolation(f"factor edge ({u}, {v}) is not in the graph")
        for cyc in self.cycles:
            if len(cyc) < 3:
                raise InvariantViolation("cycle shorter than 3")
        if induced:
            for c, leaves in self.stars:
                if len(leaves) >= 2:
                    for i, x in enumerate(leaves):
                        for y in leaves[i + 1:]:
                            if g.has_edge(x, y):
                                raise InvariantViolation(f"star at {c} is not induced: ({x}, {y})")

    def to_json(self) -> dict:
        return {
            "stars": [{"center": c, "leaves": list(ls)} for c, ls in self.stars],
            "cycles": [list(c) for c in self.cycles],
            "t": {str(i): c for i, c in self.t.items()},
            "n": self.excess,
            "lambda_achieved": self.lambda_achieved,
        }


# ---------------------------------------------------------------------------
# minimal factor construction


def _grow(g: Graph, cap: int, report: StructureReport) -> StarCycleFactor | None:
    """One pass of the constructive procedure on a connected graph; ``None`` if ``cap`` is too small."""
    h = canonical_max_fractional_matching(g, report)
    A = report.ge.A
    fadj: list[set[int]] = [set() for _ in range(g.n)]
    for (u, v), w in h.weights.items():
        if w == 1:
            fadj[u].add(v)
            fadj[v].add(u)
    cycles = odd_circuits(h)
    if cap < 1:
        return None

    for d in sorted(report.d_minus, key=lambda x: (g.degree(x), x)):
        # Case A: attach to the neighbour of smallest current factor degree.
        a = min(g.adj[d], key=lambda x: (len(fadj[x]), x))
        if len(fadj[a]) < cap:
            fadj[a].add(d)
            fadj[d].add(a)
            continue
        # Case B: shortest alternating path d, a1, x1, ..., a' to a centre with room.
        parent: dict[int, int] = {}
        queue: deque[int] = deque()
        target = -1
        for a in g.adj[d]:
            parent[a] = d
            queue.append(a)
        visited_leaf: set[int] = set()
        while queue and target == -1:
            a = queue.popleft()
            for x in sorted(fadj[a]):
                if len(fadj[x]) != 1 or x in visited_leaf:
                    continue
                visited_leaf.add(x)
                parent[x] = a
                for a2 in g.adj[x]:
                    if a2 in parent or a2 not in A or a2 in fadj[x]:
                        continue
                    parent[a2] = x
                    if len(fadj[a2]) < cap:
                        target = a2
                        break
                    queue.append(a2)
                if target != -1:
                    break
        if target == -1:
            return None
        path = [target]
        while path[-1] != d:
            path.append(parent[path[-1]])
        path.reverse()
        for i in range(len(path) - 1):
            x, y = path[i], path[i + 1]
            if i % 2 == 0:
                fadj[x].add(y)
                fadj[y].add(x)
            else:
                fadj[x].discard(y)
                fadj[y].discard(x)

    edges = [(u, v) for u in range(g.n) for v in fadj[u] if u < v]
    for cyc in cycles:
        edges.extend(norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    factor = StarCycleFactor.from_edges(g.n, edges)
    if factor.lambda_achieved > cap:
        raise InvariantViolation("star grew beyond the capacity")
    _check_structure(g, factor, report)
    return factor


def _check_structure(g: Graph, factor: StarCycleFactor, report: StructureReport) -> None:
    factor.validate(g)
    if factor.excess != report.n:
        raise InvariantViolation(f"factor has excess {factor.excess}, expected {report.n}")
    leaves_ok = report.d_plus | report.d_minus
    for c, leaves in factor.stars:
        if len(leaves) >= 2:
            if c not in report.witness:
                raise InvariantViolation(f"star centre {c} is not in the witness set")
            if not set(leaves) <= leaves_ok:
                raise InvariantViolation(f"star at {c} has leaves outside D+ and D-")
    if report.n == 0 and len(factor.cycles) != report.nc:
        raise InvariantViolation("factor does not have nc(G) cycles")


def _build_connected(g: Graph, max_star: int | None) -> StarCycleFactor | None:
    report = structure_report(g)
    n = report.n
    bound = ceil(n / g.min_degree) + 1
    limit = bound if max_star is None else min(bound, max_star)
    cap = 1 if n == 0 else 2
    while cap <= limit:
        factor = _grow(g, cap, report)
        if factor is not None:
            return factor
        cap += 1
    if max_star is None or max_star >= bound:
        raise InvariantViolation(f"no factor found with stars up to the bound {bound}")
    return None


def build_minimal_factor(g: Graph, max_star: int | None = None) -> StarCycleFactor | None:
    """Star-cycle factor with ``sum (i-1) t_i = |V| - 2 mu_f(G)`` and the smallest star cap that works.

    Runs on each connected component: the canonical fractional matching
    without the ``D-`` vertices gives K2's and odd cycles, then every
    ``D-`` vertex (by degree, then index) is hung on a neighbouring centre
    of smallest load, or, when all are full, an alternating path shifts a
    leaf to a centre with room.  Caps are tried in increasing order, so
    the returned factor's largest star is the first cap for which this
    succeeds.  With ``max_star`` given, ``None`` means no cap up to it worked.
    """
    if g.n == 0:
        return StarCycleFactor(0, (), ())
    stars: list = []
    cycles: list = []
    for comp in connected_components(g):
        if len(comp) == 1:
            raise NoFactorError(f"vertex {min(comp)} is isolated; no star-cycle factor exists")
        sub, index = induced_subgraph(g, comp)
        back = {i: v for v, i in index.items()}
        f = _build_connected(sub, max_star)
        if f is None:
            return None
        stars.extend((back[c], tuple(back[x] for x in ls)) for c, ls in f.stars)
        cycles.extend(tuple(back[x] for x in c) for c in f.cycles)
    factor = StarCycleFactor(g.n, tuple(stars), tuple(cycles))
    factor.validate(g)
    return factor


def min_k12(g: Graph) -> int | None:
    """``min(G, K_{1,2})``, or ``None`` when ``G`` has no factor with stars of at most two leaves."""
    if any(g.degree(v) == 0 for v in g.vertices()):
        return None
    factor = build_minimal_factor(g, max_star=2)
    if factor is None:
        return None
    return factor.t.get(2, 0)


# ---------------------------------------------------------------------------
# [1,2]-factors


def _split_path(seq: list[int], keep: Edge | None) -> list[list[int]]:
    """Cut a path into pieces of 2 or 3 vertices, fewest 3's, with ``keep`` inside one piece."""
    L = len(seq)
    best: dict[int, tuple[int, list[int]] | None] = {L: (0, [])}
    for i in range(L - 1, -1, -1):
        options = []
        for size in (2, 3):
            j = i + size
            if j > L or best.get(j) is None:
                continue
            if keep is not None:
                # A cut just before position i must not separate the kept edge.
                if i > 0 and norm_edge(seq[i - 1], seq[i]) == keep:
                    continue
            cost, rest = best[j]
            options.append((cost + (size == 3), [size] + rest))
        best[i] = min(options) if options else None
    if best[0] is None:
        raise ValueError("path cannot be split with the requested edge kept")
    pieces, i = [], 0
    for size in best[0][1]:
        pieces.append(seq[i:i + size])
        i += size
    return pieces


def decompose_paths(edges: Iterable[Edge], g: Graph, keep: Edge | None = None) -> StarCycleFactor:
    """Turn a spanning [1,2]-factor into a star-cycle factor with stars of at most two leaves.

    Cycles stay whole; each path is cut into ``K_{1,1}``'s plus one ``K_{1,2}``
    exactly when it has an odd number of vertices.  If ``keep`` is given it
    must end up inside some component.
    """
    edges = [norm_edge(u, v) for u, v in edges]
    f = Graph.from_edges(g.n, edges)
    for v in f.vertices():
        if f.degree(v) not in (1, 2):
            raise ValueError(f"vertex {v} has degree {f.degree(v)} in F; a [1,2]-factor is required")
        for w in f.adj[v]:
            if not g.has_edge(v, w):
                raise ValueError(f"({v}, {w}) is not an edge of G")
    keep = norm_edge(*keep) if keep is not None else None
    stars, cycles = [], []
    for comp in connected_components(f):
        ends = sorted(v for v in comp if f.degree(v) == 1)
        start = ends[0] if ends else min(comp)
        seq, prev, cur = [start], -1, start
        while True:
            nxt = [w for w in f.adj[cur] if w != prev]
            if not nxt or nxt[0] == start:
                break
            seq.append(nxt[0])
            prev, cur = cur, nxt[0]
        if not ends:
            cycles.append(tuple(seq))
            continue
        on_path = keep is not None and keep[0] in comp and keep[1] in comp
        for piece in _split_path(seq, keep if on_path else None):
            center = piece[1] if len(piece) == 3 else piece[0]
            stars.append((center, tuple(x for x in piece if x != center)))
    factor = StarCycleFactor(g.n, tuple(stars), tuple(cycles))
    factor.validate(g, induced=False)
    return factor


def k12_factor_with_edge(g: Graph, e: Edge) -> StarCycleFactor | None:
    """A factor with stars of at most two leaves that uses ``e``, or ``None`` if none exists.

    Contract ``e = uv`` to ``w`` and ask for a spanning subgraph with degree
    1 or 2 everywhere except 0 or 1 at ``w``.  Such a subgraph lifts back to a
    [1,2]-factor of ``G`` in which ``uv`` ends a path, which is then cut
    into small stars.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    mg, w, index = contract_edge(g, u, v)
    lo = [1] * mg.n
    hi = [2] * mg.n
    lo[w], hi[w] = 0, 1
    sub = gf_factor(mg, DegreeBounds(tuple(lo), tuple(hi)))
    if sub is None:
        return None
    back = {i: x for x, i in index.items() if x not in (u, v)}
    edges: list[Edge] = []
    other = None
    for a, b in sub:
        if w in (a, b):
            other = back[b if a == w else a]
        else:
            edges.append((back[a], back[b]))
    if other is None:
        edges.append((u, v))
    elif g.has_edge(v, other):
        edges += [(u, v), (v, other)]
    else:
        edges += [(u, v), (u, other)]
    factor = decompose_paths(edges, g, keep=(u, v))
    if not factor.contains_edge(u, v) or factor.lambda_achieved > 2:
        raise InvariantViolation("lifted factor lost the prescribed edge")
    return factor


def has_k12_factor(g: Graph) -> bool:
    """True iff ``G`` has a spanning subgraph with all degrees in {1, 2}."""
    return gf_factor(g, DegreeBounds.uniform(g.n, 1, 2)) is not None
