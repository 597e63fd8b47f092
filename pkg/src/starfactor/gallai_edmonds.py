"""Gallai-Edmonds decomposition, the ``nc`` statistic and the D+/D-/witness structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvariantViolation, NoFactorError
from .graph import Graph, connected_components, induced_subgraph, isolated_count
from .matching import (
    Matching,
    _max_matching_adj,
    bipartite_max_weight_matching,
    maximum_matching,
)


@dataclass(frozen=True)
class GEDecomposition:
    D: frozenset[int]
    A: frozenset[int]
    C: frozenset[int]
    d_components: tuple[frozenset[int], ...]
    mu: int

    @property
    def trivial_components(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.d_components if len(c) == 1)

    @property
    def nontrivial_components(self) -> tuple[frozenset[int], ...]:
        return tuple(c for c in self.d_components if len(c) > 1)

    def to_json(self) -> dict:
        return {
            "D": sorted(self.D),
            "A": sorted(self.A),
            "C": sorted(self.C),
            "d_components": [
                {"vertices": sorted(c), "trivial": len(c) == 1} for c in self.d_components
            ],
            "mu": self.mu,
        }


@dataclass(frozen=True)
class StructureReport:
    ge: GEDecomposition
    M: Matching
    nc: int
    d_minus: frozenset[int]
    d_plus: frozenset[int]
    witness: frozenset[int]
    n: int

    def to_json(self) -> dict:
        return {
            "ge": self.ge.to_json(),
            "matching": [list(e) for e in self.M.edges],
            "nc": self.nc,
            "d_minus": sorted(self.d_minus),
            "d_plus": sorted(self.d_plus),
            "witness": sorted(self.witness),
            "n": self.n,
        }


def _mu_without(g: Graph, m: Matching, v: int) -> int:
    adj = [() if x == v else tuple(w for w in nbrs if w != v) for x, nbrs in enumerate(g.adj)]
    start = list(m.mate)
    if start[v] != -1:
        start[start[v]] = -1
        start[v] = -1
    mate = _max_matching_adj(adj, start)
    return sum(1 for x, w in enumerate(mate) if x < w)


def is_factor_critical(h: Graph) -> bool:
    if h.n % 2 == 0:
        return False
    m = maximum_matching(h)
    target = (h.n - 1) // 2
    return all(_mu_without(h, m, v) == target for v in h.vertices())


def _has_perfect_matching_on(g: Graph, vertices: frozenset[int]) -> Matching | None:
    sub, index = induced_subgraph(g, vertices)
    m = maximum_matching(sub)
    if 2 * m.size != sub.n:
        return None
    back = {i: v for v, i in index.items()}
    return Matching.from_edges(g.n, ((back[a], back[b]) for a, b in m.edges))


def decompose(g: Graph, verify: bool = True) -> GEDecomposition:
    """Gallai-Edmonds decomposition by the definition: ``v`` is in ``D`` iff ``mu(G-v) = mu(G)``."""
    m = maximum_matching(g)
    mu = m.size
    D = frozenset(v for v in g.vertices() if m.mate[v] == -1 or _mu_without(g, m, v) == mu)
    A = frozenset(w for v in D for w in g.adj[v] if w not in D)
    C = frozenset(g.vertices()) - D - A
    sub, index = induced_subgraph(g, D)
    back = {i: v for v, i in index.items()}
    comps = tuple(
        sorted((frozenset(back[i] for i in c) for c in connected_components(sub)), key=min)
    )
    ge = GEDecomposition(D, A, C, comps, mu)
    if verify:
        _verify_ge(g, ge)
    return ge


def _verify_ge(g: Graph, ge: GEDecomposition) -> None:
    if 2 * ge.mu != g.n - len(ge.d_components) + len(ge.A):
        raise InvariantViolation("matching number disagrees with the Gallai-Edmonds formula")
    for comp in ge.nontrivial_components:
        if not is_factor_critical(induced_subgraph(g, comp)[0]):
            raise InvariantViolation(f"D-component {sorted(comp)} is not factor-critical")
    if _has_perfect_matching_on(g, ge.C) is None:
        raise InvariantViolation("G[C] has no perfect matching")


def compute_nc(g: Graph, ge: GEDecomposition) -> tuple[int, Matching]:
    """Return ``nc(G)`` and a maximum matching attaining it.

    Every A-saturating assignment of A-vertices to distinct D-components
    extends to a maximum matching, so maximising the number of A-vertices
    sent to trivial components minimises the number of non-trivial
    components that get matched into A.
    """
    comps = ge.d_components
    comp_of = {v: k for k, c in enumerate(comps) for v in c}
    left = sorted(ge.A)
    pairs = sorted({(a, comp_of[w]) for a in left for w in g.adj[a] if w in comp_of})
    weights = {(a, k): 1 for a, k in pairs if len(comps[k]) == 1}
    try:
        assignment = bipartite_max_weight_matching(
            left, range(len(comps)), pairs, weights, saturate_left=True
        )
    except NoFactorError:
        raise InvariantViolation("A cannot be matched into distinct D-components") from None

    edges = []
    matched_comps = set()
    for a, k in assignment.pairs:
        x = min(w for w in g.adj[a] if w in comps[k])
        edges.append((a, x))
        matched_comps.add(k)
        if len(comps[k]) > 1:
            edges.extend(_near_perfect(g, comps[k], x))
    for k, comp in enumerate(comps):
        if k not in matched_comps and len(comp) > 1:
            edges.extend(_near_perfect(g, comp, min(comp)))
    if ge.C:
        pm = _has_perfect_matching_on(g, ge.C)
        if pm is None:
            raise InvariantViolation("G[C] has no perfect matching")
        edges.extend(pm.edges)
    M = Matching.from_edges(g.n, edges)
    if M.size != ge.mu or not M.is_valid_in(g):
        raise InvariantViolation("composed matching is not maximum")
    nontrivial = sum(1 for c in comps if len(c) > 1)
    nc = nontrivial - sum(1 for k in matched_comps if len(comps[k]) > 1)
    return nc, M


def _near_perfect(g: Graph, comp: frozenset[int], missing: int) -> list[tuple[int, int]]:
    pm = _has_perfect_matching_on(g, comp - {missing})
    if pm is None:
        raise InvariantViolation(f"component {sorted(comp)} is not factor-critical at {missing}")
    return list(pm.edges)


def structure_report(g: Graph, verify: bool = True) -> StructureReport:
    """Gallai-Edmonds data plus ``D-``, ``D+`` and the witness set ``N(D+ u D-)``.

    ``D+`` is grown from ``D-`` along M-alternating paths: a vertex of ``D-``
    leaves by a non-matching edge into ``A`` and every A-vertex is followed
    by its matching partner.  Because ``M`` attains ``nc(G)``, those partners
    are always isolated vertices of ``G[D]``; meeting a non-trivial component
    instead would contradict that maximality and is reported as a bug.
    """
    ge = decompose(g, verify=verify)
    nc, M = compute_nc(g, ge)
    trivial = frozenset(v for c in ge.trivial_components for v in c)
    d_minus = frozenset(v for v in trivial if M.mate[v] == -1)

    d_plus: set[int] = set()
    seen_odd: set[int] = set()
    queue = deque(sorted(d_minus))
    while queue:
        e = queue.popleft()
        for a in g.adj[e]:
            if a == M.mate[e] or a in seen_odd:
                continue
            seen_odd.add(a)
            b = M.mate[a]
            if b == -1 or b not in trivial:
                raise InvariantViolation(
                    f"alternating path from D- reaches {b} outside the isolated D-vertices"
                )
            if b not in d_plus:
                d_plus.add(b)
                queue.append(b)

    support = d_plus | d_minus
    witness = frozenset(w for v in support for w in g.adj[v])
    n = g.n - 2 * ge.mu - nc
    report = StructureReport(ge, M, nc, d_minus, frozenset(d_plus), witness, n)
    if verify:
        _verify_report(g, report)
    return report


def _verify_report(g: Graph, r: StructureReport) -> None:
    if len(r.d_minus) != r.n:
        raise InvariantViolation(f"|D-| = {len(r.d_minus)} but n = {r.n}")
    if len(r.witness) != len(r.d_plus):
        raise InvariantViolation("|N(D+ u D-)| differs from |D+|")
    for w in r.witness:
        if r.M.mate[w] not in r.d_plus:
            raise InvariantViolation(f"witness vertex {w} is not matched into D+")
    if isolated_count(g, r.witness) != len(r.witness) + r.n:
        raise InvariantViolation("N(D+ u D-) is not a witness set")
