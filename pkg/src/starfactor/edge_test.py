"""Per-edge membership in factors whose stars have at most two leaves."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BoundExceededError, InvariantViolation, NoFactorError
from .factors import has_k12_factor, k12_factor_with_edge
from .fractional import max_fractional_matching_with_edge
from .graph import Edge, Graph, norm_edge

DEFAULT_CERTIFICATE_BOUND = 16


@dataclass(frozen=True)
class ExclusionCertificate:
    """A set ``S`` containing both ends of ``edge`` with ``2|S| - 2 <= iso(G - S) <= 2|S|``."""

    S: frozenset[int]
    iso_count: int
    edge: Edge

    def validate(self, g: Graph) -> None:
        u, v = self.edge
        if u not in self.S or v not in self.S:
            raise InvariantViolation("certificate set misses an endpoint of the edge")
        mask = sum(1 << x for x in self.S)
        iso = sum(1 for x in g.vertices() if not (mask >> x) & 1 and not g.masks[x] & ~mask)
        if iso != self.iso_count:
            raise InvariantViolation("certificate records the wrong isolated count")
        k = len(self.S)
        if not 2 * k - 2 <= iso <= 2 * k:
            raise InvariantViolation("certificate violates 2|S|-2 <= iso <= 2|S|")

    def to_json(self) -> dict:
        return {"S": sorted(self.S), "iso": self.iso_count, "edge": list(self.edge)}


def _check_edge(g: Graph, e: Edge) -> Edge:
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    return norm_edge(u, v)


def edge_in_some_k12_factor(g: Graph, e: Edge) -> bool:
    """Polynomial decision through edge contraction and a degree-constrained subgraph."""
    _check_edge(g, e)
    if not has_k12_factor(g):
        raise NoFactorError("the graph has no factor with stars of at most two leaves")
    return k12_factor_with_edge(g, e) is not None


def find_exclusion_certificate(
    g: Graph, e: Edge, bound: int = DEFAULT_CERTIFICATE_BOUND
) -> ExclusionCertificate | None:
    """Smallest (then lexicographically first) set certifying that ``e`` is in no such factor.

    Exhaustive over supersets of ``{u, v}``; refuses graphs larger than ``bound``.
    """
    u, v = _check_edge(g, e)
    if g.n > bound:
        raise BoundExceededError(f"certificate search limited to {bound} vertices, graph has {g.n}")
    masks = g.masks
    others = [x for x in g.vertices() if x not in (u, v)]
    base = (1 << u) | (1 << v)
    for extra in range(len(others) + 1):
        k = extra + 2
        for rest in combinations(others, extra):
            mask = base
            for x in rest:
                mask |= 1 << x
            iso = 0
            for x in g.vertices():
                if not (mask >> x) & 1 and not masks[x] & ~mask:
                    iso += 1
            if 2 * k - 2 <= iso <= 2 * k:
                cert = ExclusionCertificate(frozenset((u, v) + rest), iso, (u, v))
                cert.validate(g)
                return cert
    return None


def forced_zero_weight(g: Graph, e: Edge) -> bool:
    """True iff every maximum fractional matching puts weight 0 on ``e``."""
    _check_edge(g, e)
    return max_fractional_matching_with_edge(g, e) is None
