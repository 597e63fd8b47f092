"""Graph representation, text formats and elementary structural operations.

Vertices are always the dense integers ``0..n-1``.  Neighbor lists are kept
sorted so that every iteration order (and therefore every tie-break in the
algorithms built on top) is deterministic.  Vertex sets are plain
``frozenset`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import GraphFormatError

Edge = tuple[int, int]
VertexSet = frozenset


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    _edges: tuple[Edge, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        edges = []
        for v, nbrs in enumerate(self.adj):
            prev = -1
            for w in nbrs:
                if w == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= w < self.n:
                    raise ValueError(f"neighbor {w} of {v} out of range")
                if w <= prev:
                    raise ValueError(f"neighbor list of {v} not strictly increasing")
                prev = w
                if v < w:
                    edges.append((v, w))
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if v not in self._nbr_sets[w]:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        object.__setattr__(self, "_edges", tuple(edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def _nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhood of each vertex as an integer bitmask."""
        out = []
        for nbrs in self.adj:
            m = 0
            for w in nbrs:
                m |= 1 << w
            out.append(m)
        return tuple(out)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._nbr_sets[u]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def without_edge(self, u: int, v: int) -> "Graph":
        e = norm_edge(u, v)
        if not self.has_edge(*e):
            raise ValueError(f"{e} is not an edge")
        return Graph.from_edges(self.n, (f for f in self._edges if f != e))

    def to_graph6(self) -> str:
        return emit_graph6(self)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self._edges)})"


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph without loops; ``edges`` lists parallel edges repeatedly."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
        object.__setattr__(self, "edges", tuple(sorted(norm_edge(u, v) for u, v in self.edges)))

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        return cls(g.n, g.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def multiplicity(self, u: int, v: int) -> int:
        return self.adj[u].count(v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# graph6


def _size_bytes(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def emit_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no header, no trailing newline)."""
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytearray()
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return (_size_bytes(g.n) + bytes(body)).decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 string; an optional ``>>graph6<<`` header is skipped."""
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    if pos >= len(data):
        raise GraphFormatError("empty graph6 string", pos)
    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise GraphFormatError(f"byte {data[i]!r} outside graph6 range 63..126", i)

    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    elif len(data) > pos + 1 and data[pos + 1] == 126:
        if len(data) < pos + 8:
            raise GraphFormatError("truncated 8-byte size header", pos)
        n = 0
        for b in data[pos + 2:pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
    else:
        if len(data) < pos + 4:
            raise GraphFormatError("truncated 4-byte size header", pos)
        n = 0
        for b in data[pos + 1:pos + 4]:
            n = (n << 6) | (b - 63)
        if n < 63:
            raise GraphFormatError("non-canonical size header", pos)
        pos += 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise GraphFormatError(f"expected {need} adjacency bytes, found {len(body)}", len(data))
    if len(body) > need:
        raise GraphFormatError("trailing garbage after adjacency data", pos + need)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if need and (body[-1] - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise GraphFormatError("nonzero padding bits", pos + need - 1)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# edge lists


def parse_edge_list(text: str) -> Graph:
    """Parse lines ``u v``; an optional first line ``n <count>`` fixes the order.

    Blank lines and ``#`` comments are ignored.  Errors carry the 1-based
    line number as ``offset``.
    """
    declared: int | None = None
    pairs: list[tuple[int, int, int]] = []
    seen: set[Edge] = set()
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if first and toks[0] == "n":
            first = False
            if len(toks) != 2:
                raise GraphFormatError("malformed 'n <count>' line", lineno)
            declared = _nonneg_int(toks[1], lineno)
            continue
        first = False
        if len(toks) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        u, v = _nonneg_int(toks[0], lineno), _nonneg_int(toks[1], lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        e = norm_edge(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", lineno)
        seen.add(e)
        pairs.append((u, v, lineno))
    n = max((max(u, v) + 1 for u, v, _ in pairs), default=0)
    if declared is not None:
        if declared < n:
            raise GraphFormatError(f"edge endpoint {n - 1} exceeds declared n={declared}")
        n = declared
    return Graph.from_edges(n, ((u, v) for u, v, _ in pairs))


def _nonneg_int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise GraphFormatError(f"non-integer token {tok!r}", lineno) from None
    if val < 0:
        raise GraphFormatError(f"negative vertex {val}", lineno)
    return val


def parse_dimacs(text: str) -> Graph:
    """Read a DIMACS ``p edge`` file (1-based vertices) into a 0-based graph."""
    n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p":
            if len(toks) < 3 or toks[1].lower() not in ("edge", "col"):
                raise GraphFormatError(f"unsupported problem line {raw!r}", lineno)
            n = _nonneg_int(toks[2], lineno)
        elif toks[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before problem line", lineno)
            if len(toks) != 3:
                raise GraphFormatError(f"malformed edge line {raw!r}", lineno)
            u, v = _nonneg_int(toks[1], lineno) - 1, _nonneg_int(toks[2], lineno) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in {raw!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u + 1}", lineno)
            e = norm_edge(u, v)
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise GraphFormatError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge' line")
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# structural operations


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[S]`` relabelled to ``0..|S|-1`` in increasing order, plus the old->new map."""
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph.from_edges(len(keep), edges), index


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    drop = set(s)
    return induced_subgraph(g, (v for v in g.vertices() if v not in drop))


def isolated_vertices(g: Graph, s: Iterable[int] = ()) -> frozenset[int]:
    """``Iso(G - S)`` in the original labelling."""
    drop = frozenset(s)
    return frozenset(
        v for v in g.vertices()
        if v not in drop and all(w in drop for w in g.adj[v])
    )


def isolated_count(g: Graph, s: Iterable[int] = ()) -> int:
    return len(isolated_vertices(g, s))


def contract_edge(g: Graph, u: int, v: int) -> tuple[MultiGraph, int, dict[int, int]]:
    """Contract ``uv`` into a new vertex ``w``; parallel edges are kept.

    The surviving vertices keep their relative order and ``w`` is the last
    vertex.  The map sends every old vertex (including ``u`` and ``v``) to
    its new index.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    rest = [x for x in g.vertices() if x not in (u, v)]
    index = {x: i for i, x in enumerate(rest)}
    w = len(rest)
    index[u] = index[v] = w
    edges = []
    for a, b in g.edges:
        if {a, b} == {u, v}:
            continue
        edges.append((index[a], index[b]))
    return MultiGraph(w + 1, tuple(edges)), w, index


def connected_components(g: Graph | MultiGraph) -> list[frozenset[int]]:
    """Components in order of their smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
                    comp.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def relabel(g: Graph, mapping: Mapping[int, int]) -> Graph:
    return Graph.from_edges(g.n, ((mapping[u], mapping[v]) for u, v in g.edges))


def degree_sum(g: Graph | MultiGraph) -> int:
    return sum(len(a) for a in g.adj)
