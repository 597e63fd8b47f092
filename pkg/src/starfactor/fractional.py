"""Fractional matchings: exact ``mu_f``, canonical half-integral optima, edge forcing.

A maximum fractional matching is *canonical* when its weight-1 edges form a
matching, its weight-1/2 edges form vertex-disjoint odd circuits, and the two
parts share no vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvariantViolation
from .gallai_edmonds import StructureReport, structure_report
from .graph import Edge, Graph, connected_components, induced_subgraph, norm_edge
from .matching import _find_augmenting_path, _max_matching_adj

HALF = Fraction(1, 2)
ONE = Fraction(1)


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FractionalMatching:
    """Edge weighting with per-vertex load at most 1; only non-zero weights are stored."""

    n: int
    weights: Mapping[Edge, Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for (u, v), w in self.weights.items():
            w = Fraction(w)
            if w < 0 or w > 1:
                raise ValueError(f"weight {w} on ({u}, {v}) outside [0, 1]")
            if w:
                clean[norm_edge(u, v)] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items())))

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def support(self) -> tuple[Edge, ...]:
        return tuple(self.weights)

    def weight(self, u: int, v: int) -> Fraction:
        return self.weights.get(norm_edge(u, v), Fraction(0))

    def loads(self) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for (u, v), w in self.weights.items():
            out[u] += w
            out[v] += w
        return out

    def is_valid_in(self, g: Graph) -> bool:
        return (
            self.n == g.n
            and all(g.has_edge(u, v) for u, v in self.weights)
            and all(x <= 1 for x in self.loads())
        )

    def is_half_integral(self) -> bool:
        return all(w in (HALF, ONE) for w in self.weights.values())

    def to_json(self) -> dict:
        return {
            "edges": [[u, v, str(w)] for (u, v), w in self.weights.items()],
            "value": rational_str(self.value),
        }

    @classmethod
    def from_json(cls, n: int, data: dict) -> "FractionalMatching":
        return cls(n, {(int(u), int(v)): Fraction(w) for u, v, w in data["edges"]})


HalfIntegralMatching = FractionalMatching


# ---------------------------------------------------------------------------
# bipartite double cover


def _cover_adj(g: Graph, drop: Iterable[int] = ()) -> list[list[int]]:
    """Double cover: ``v`` is ``v+`` and ``n + v`` is ``v-``; edge ``uv`` gives ``u+v-`` and ``v+u-``."""
    n = g.n
    dropped = set(drop)
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for u, v in g.edges:
        for a, b in ((u, n + v), (v, n + u)):
            if a not in dropped and b not in dropped:
                adj[a].append(b)
                adj[b].append(a)
    for nbrs in adj:
        nbrs.sort()
    return adj


def _project(g: Graph, mate: list[int]) -> FractionalMatching:
    n = g.n
    weights: dict[Edge, Fraction] = {}
    for a in range(n):
        b = mate[a]
        if b != -1:
            e = norm_edge(a, b - n)
            weights[e] = weights.get(e, Fraction(0)) + HALF
    return FractionalMatching(n, weights)


def fractional_matching_number(g: Graph) -> Fraction:
    """``mu_f(G)`` as half the matching number of the bipartite double cover."""
    mate = _max_matching_adj(_cover_adj(g))
    return Fraction(sum(1 for m in mate if m != -1), 4)


def is_canonical(g: Graph, h: FractionalMatching) -> bool:
    if not h.is_valid_in(g) or not h.is_half_integral():
        return False
    full = [e for e, w in h.weights.items() if w == ONE]
    half = [e for e, w in h.weights.items() if w == HALF]
    used = set()
    for u, v in full:
        if u in used or v in used:
            return False
        used.update((u, v))
    hdeg: dict[int, int] = {}
    for u, v in half:
        for x in (u, v):
            if x in used:
                return False
            hdeg[x] = hdeg.get(x, 0) + 1
    if any(d != 2 for d in hdeg.values()):
        return False
    sub = Graph.from_edges(g.n, half)
    for comp in connected_components(sub):
        if len(comp) > 1 and len(comp) % 2 == 0:
            return False
    return True


def odd_circuits(h: FractionalMatching) -> list[list[int]]:
    """Vertex sequences of the weight-1/2 circuits of a canonical matching."""
    half = [e for e, w in h.weights.items() if w == HALF]
    sub = Graph.from_edges(h.n, half)
    out = []
    for comp in connected_components(sub):
        if len(comp) == 1:
            continue
        start = min(comp)
        seq, prev, cur = [start], -1, start
        while True:
            nxt = next(w for w in sub.adj[cur] if w != prev)
            if nxt == start:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        out.append(seq)
    return out


# ---------------------------------------------------------------------------
# canonicalisation


class _Support:
    """Mutable weight map over an adjacency, with the discharge moves."""

    def __init__(self, adj: list[set[int]], weights: dict[Edge, Fraction], protected: Edge | None):
        self.adj = adj
        self.w = {e: x for e, x in weights.items() if x}
        self.protected = protected

    def nbrs(self, v: int) -> list[int]:
        return sorted(x for x in self.adj[v] if self.w.get(norm_edge(v, x)))

    def shift(self, delta: dict[Edge, Fraction]) -> None:
        """Add ``m * delta`` with the largest ``m`` keeping weights non-negative."""
        if self.protected is not None and delta.get(self.protected, 0) < 0:
            delta = {e: -d for e, d in delta.items()}
        m = min(self.w[e] / -d for e, d in delta.items() if d < 0)
        for e, d in delta.items():
            x = self.w[e] + m * d
            if x < 0:
                raise InvariantViolation("discharge step overshot")
            if x:
                self.w[e] = x
            else:
                del self.w[e]
        if self.protected is not None and self.protected not in self.w:
            raise InvariantViolation("discharge removed the protected edge")

    def rotate_even_cycle(self, cyc: list[int]) -> None:
        delta = {}
        for i, a in enumerate(cyc):
            b = cyc[(i + 1) % len(cyc)]
            delta[norm_edge(a, b)] = Fraction(1 if i % 2 == 0 else -1)
        self.shift(delta)

    def discharge_dumbbell(self, c1: list[int], path: list[int], c2: list[int]) -> None:
        """``c1`` starts at ``path[0]``, ``c2`` starts at ``path[-1]``; both are odd."""
        delta: dict[Edge, Fraction] = {}
        sign = Fraction(1)
        for a, b in zip(path, path[1:]):
            delta[norm_edge(a, b)] = sign
            sign = -sign
        first = delta[norm_edge(path[0], path[1])] if len(path) > 1 else Fraction(1)
        last = -sign if len(path) > 1 else Fraction(-1)

        def around(cyc: list[int], a: Fraction) -> None:
            for i, x in enumerate(cyc):
                y = cyc[(i + 1) % len(cyc)]
                delta[norm_edge(x, y)] = a if i % 2 == 0 else -a

        around(c1, -first / 2)
        around(c2, -last / 2)
        self.shift(delta)


def _walk_cycle(sup: _Support, start: int, avoid_first: int | None, allowed: set[int]) -> list[int]:
    """Non-backtracking walk inside ``allowed`` until a vertex repeats; returns that cycle."""
    pos = {start: 0}
    seq = [start]
    prev = avoid_first if avoid_first is not None else -1
    cur = start
    while True:
        nxt = next(x for x in sup.nbrs(cur) if x != prev and x in allowed)
        if nxt in pos:
            return seq[pos[nxt]:]
        pos[nxt] = len(seq)
        seq.append(nxt)
        prev, cur = cur, nxt


def _even_from_theta(cyc: list[int], ear: list[int]) -> list[int]:
    """Given a circuit and an ear joining two of its vertices, return an even circuit."""
    x, z = ear[0], ear[-1]
    i, j = cyc.index(x), cyc.index(z)
    k = len(cyc)
    fwd = [cyc[(i + t) % k] for t in range((j - i) % k + 1)]
    bwd = [cyc[(i - t) % k] for t in range((i - j) % k + 1)]
    ear_len = len(ear) - 1
    for side in (fwd, bwd):
        if (len(side) - 1 + ear_len) % 2 == 0:
            return side + ear[-2:0:-1]
    raise InvariantViolation("theta graph without an even circuit")


def _improve_component(sup: _Support, comp: set[int]) -> bool:
    """Apply one discharge move inside a support component; False if it is already canonical."""
    if len(comp) == 2:
        return False
    degs = {v: len(sup.nbrs(v)) for v in comp}
    if min(degs.values()) < 2:
        raise InvariantViolation("pendant support edge outside a K2 in a perfect fractional matching")
    start = min(comp)
    cyc = _walk_cycle(sup, start, None, comp)
    if len(cyc) % 2 == 0:
        sup.rotate_even_cycle(cyc)
        return True
    if all(d == 2 for d in degs.values()):
        return False

    on_cycle = set(cyc)
    for x in cyc:
        for y in sup.nbrs(x):
            if y in on_cycle:
                if norm_edge(x, y) in _cycle_edges(cyc):
                    continue
                sup.rotate_even_cycle(_even_from_theta(cyc, [x, y]))
                return True
            # Search from y, never passing through the circuit, for a way back onto it.
            parent = {y: x}
            queue = deque([y])
            region = {y}
            while queue:
                a = queue.popleft()
                for b in sup.nbrs(a):
                    if b == x and a == y:
                        continue
                    if b in on_cycle:
                        if b == x:
                            continue
                        ear = [b, a]
                        while ear[-1] != x:
                            ear.append(parent[ear[-1]])
                        sup.rotate_even_cycle(_even_from_theta(cyc, ear[::-1]))
                        return True
                    if b not in region:
                        region.add(b)
                        parent[b] = a
                        queue.append(b)
            # Everything beyond y hangs off the circuit at x alone: find a second circuit there.
            cyc2 = _walk_cycle(sup, y, x, region | {x})
            if len(cyc2) % 2 == 0:
                sup.rotate_even_cycle(cyc2)
                return True
            c1 = _rooted(cyc, x)
            if x in cyc2:
                sup.discharge_dumbbell(c1, [x], _rooted(cyc2, x))
                return True
            path = _shortest_path_to(sup, x, set(cyc2), region | {x})
            sup.discharge_dumbbell(c1, path, _rooted(cyc2, path[-1]))
            return True
    raise InvariantViolation("vertex of degree > 2 not found on expected structure")


def _cycle_edges(cyc: list[int]) -> set[Edge]:
    return {norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}


def _rooted(cyc: list[int], root: int) -> list[int]:
    i = cyc.index(root)
    return cyc[i:] + cyc[:i]


def _shortest_path_to(sup: _Support, src: int, targets: set[int], allowed: set[int]) -> list[int]:
    parent = {src: -1}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        if a in targets:
            path = [a]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return path[::-1]
        for b in sup.nbrs(a):
            if b in allowed and b not in parent:
                parent[b] = a
                queue.append(b)
    raise InvariantViolation("second circuit unreachable")


def _canonicalize_perfect(sup: _Support, vertices: Iterable[int]) -> None:
    verts = list(vertices)
    while True:
        changed = False
        seen: set[int] = set()
        for s in verts:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for b in sup.nbrs(a):
                    if b not in comp:
                        comp.add(b)
                        queue.append(b)
            seen |= comp
            if len(comp) == 1:
                raise InvariantViolation(f"vertex {s} carries no weight in a perfect fractional matching")
            if _improve_component(sup, comp):
                changed = True
                break
        if not changed:
            return


def canonicalize(g: Graph, h: FractionalMatching, protected: Edge | None = None) -> FractionalMatching:
    """Rewrite a maximum fractional matching into canonical form with the same value.

    Unsaturated vertices are first absorbed by ``n = |V| - 2 mu_f`` new
    vertices, making the matching perfect on an extended graph.  Even
    circuits in the support are then rotated away and pairs of odd circuits
    joined by a path are discharged, each move zeroing at least one more
    edge, until only K2's and odd circuits remain.  A ``protected`` edge with
    non-zero weight keeps a non-zero weight throughout.
    """
    if not h.is_valid_in(g):
        raise ValueError("h is not a fractional matching of g")
    if protected is not None:
        protected = norm_edge(*protected)
        if not h.weight(*protected):
            raise ValueError(f"protected edge {protected} has weight 0")
    target = fractional_matching_number(g)
    if h.value != target:
        raise ValueError(f"h has value {h.value}, but mu_f(G) = {target}; only maximum matchings are canonicalized")
    n = g.n
    deficit = n - 2 * target
    if deficit.denominator != 1:
        raise InvariantViolation("2 mu_f is not an integer")
    k = int(deficit)

    adj: list[set[int]] = [set(a) for a in g.adj] + [set() for _ in range(k)]
    weights = dict(h.weights)
    loads = h.loads()
    slack = [(v, 1 - loads[v]) for v in range(n) if loads[v] < 1]
    for i in range(k):
        xv = n + i
        for v, _ in slack:
            adj[xv].add(v)
            adj[v].add(xv)
    xi, room = 0, Fraction(1)
    for v, s in slack:
        while s > 0:
            if xi >= k:
                raise InvariantViolation("slack exceeds the number of absorbing vertices")
            take = min(s, room)
            e = norm_edge(v, n + xi)
            weights[e] = weights.get(e, Fraction(0)) + take
            s -= take
            room -= take
            if room == 0:
                xi, room = xi + 1, Fraction(1)

    sup = _Support(adj, weights, protected)
    _canonicalize_perfect(sup, range(n + k))

    out: dict[Edge, Fraction] = {}
    for (u, v), w in sup.w.items():
        if u >= n or v >= n:
            if w != 1:
                raise InvariantViolation("absorbing vertex left on a circuit")
            continue
        out[(u, v)] = w
    result = FractionalMatching(n, out)
    if result.value != target or not is_canonical(g, result):
        raise InvariantViolation("canonicalization produced a non-canonical or non-maximum matching")
    if protected is not None and not result.weight(*protected):
        raise InvariantViolation("protected edge lost its weight")
    return result


# ---------------------------------------------------------------------------
# canonical optimum with respect to the Gallai-Edmonds matching


def _alternating_odd_circuit(g: Graph, comp: frozenset[int], mate: tuple[int, ...], root: int) -> list[int]:
    """An M-alternating odd circuit through the M-exposed ``root`` of a factor-critical component.

    Found as an augmenting path between ``root`` and a twin copy of it.
    """
    sub, index = induced_subgraph(g, comp)
    back = {i: v for v, i in index.items()}
    r = index[root]
    twin = sub.n
    adj = [list(a) for a in sub.adj] + [list(sub.adj[r])]
    for w in sub.adj[r]:
        adj[w].append(twin)
    local = [-1] * (sub.n + 1)
    for v in comp:
        m = mate[v]
        if m != -1 and m in comp:
            local[index[v]] = index[m]
    before = list(local)
    if _find_augmenting_path(adj, local, r) != twin:
        raise InvariantViolation(f"no alternating circuit through {root}")
    # The augmenting path is the symmetric difference of the two matchings.
    path = [r]
    prev = -1
    cur = r
    while cur != twin:
        nxt = local[cur] if (len(path) % 2 == 1) else before[cur]
        if nxt == prev or nxt == -1:
            raise InvariantViolation("malformed augmenting path")
        path.append(nxt)
        prev, cur = cur, nxt
    cyc = [back[v] for v in path[:-1]]
    if len(cyc) % 2 == 0 or len(set(cyc)) != len(cyc):
        raise InvariantViolation("alternating circuit is not a simple odd circuit")
    return cyc


def canonical_max_fractional_matching(
    g: Graph, report: StructureReport | None = None
) -> FractionalMatching:
    """Canonical maximum fractional matching whose support contains the ``nc``-maximal matching.

    Weight 1 goes on every edge of ``M``, except inside each non-trivial
    D-component left unmatched into A, where an M-alternating odd circuit
    through the exposed vertex carries weight 1/2.
    """
    if report is None:
        report = structure_report(g)
    M = report.M
    weights: dict[Edge, Fraction] = {e: ONE for e in M.edges}
    for comp in report.ge.nontrivial_components:
        exposed = [v for v in comp if M.mate[v] == -1]
        if not exposed:
            continue
        (root,) = exposed
        cyc = _alternating_odd_circuit(g, comp, M.mate, root)
        for i, a in enumerate(cyc):
            weights[norm_edge(a, cyc[(i + 1) % len(cyc)])] = HALF
    h = FractionalMatching(g.n, weights)
    if not is_canonical(g, h) or h.value != fractional_matching_number(g):
        raise InvariantViolation("GE-based fractional matching is not a canonical optimum")
    if any(not h.weight(*e) for e in M.edges):
        raise InvariantViolation("canonical matching does not contain M in its support")
    return h


def max_fractional_matching_with_edge(g: Graph, e: Edge) -> FractionalMatching | None:
    """A canonical maximum fractional matching with non-zero weight on ``e``, if one exists.

    Decided in the double cover: some optimum uses ``uv`` iff some maximum
    matching of the cover uses ``u+v-`` or ``v+u-``, checked by deleting the
    two endpoints and comparing matching numbers.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    n = g.n
    full = sum(1 for m in _max_matching_adj(_cover_adj(g)) if m != -1) // 2
    for a, b in ((u, v), (v, u)):
        mate = _max_matching_adj(_cover_adj(g, drop=(a, n + b)))
        if sum(1 for m in mate if m != -1) // 2 + 1 == full:
            mate[a], mate[n + b] = n + b, a
            h = _project(g, mate)
            return canonicalize(g, h, protected=norm_edge(u, v))
    return None
