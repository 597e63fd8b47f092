"""Small named graphs used as fixtures throughout the package and its tests."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph


def empty(n: int) -> Graph:
    return Graph.from_edges(n, ())


def path(n: int) -> Graph:
    """P_n: the path on ``n`` vertices ``0-1-...-(n-1)``."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(r: int, s: int) -> Graph:
    return Graph.from_edges(r + s, ((i, r + j) for i in range(r) for j in range(s)))


def star(s: int) -> Graph:
    """K_{1,s} with center 0 and leaves ``1..s``."""
    return complete_bipartite(1, s)


def petersen() -> Graph:
    """Outer 5-cycle ``0..4``, spokes ``i-(i+5)``, inner pentagram ``5..9``."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def paw() -> Graph:
    """Triangle ``a=0, b=1, c=2`` with pendant ``d=3`` attached to ``a``."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def double_star() -> Graph:
    """Edge ``u=0 - v=1``; ``u`` carries leaves 2, 3 and ``v`` carries leaves 4, 5."""
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def unbalanced_double_star() -> Graph:
    """Edge ``u=0 - v=1``; ``u`` carries leaves 2, 3 and ``v`` carries leaf 4."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])


def long_double_star() -> Graph:
    """Path ``v1=0, d=3, u=4, v=5, g=6, v2=7`` with leaves 1, 2 on v1 and 8, 9 on v2."""
    return Graph.from_edges(
        10,
        [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (7, 9)],
    )


def dumbbell(path_length: int = 1) -> Graph:
    """Triangles on ``0,1,2`` and ``t,t+1,t+2`` joined by a path of the given length from 0 to ``t``.

    With ``path_length == 0`` the two triangles share vertex 0 (a bowtie).
    """
    if path_length == 0:
        return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    chain = [0] + list(range(3, 3 + path_length))
    t = chain[-1]
    edges = [(0, 1), (1, 2), (0, 2)]
    edges += list(zip(chain, chain[1:]))
    edges += [(t, t + 1), (t + 1, t + 2), (t, t + 2)]
    return Graph.from_edges(t + 3, edges)


def subdivided_k4() -> Graph:
    """K4 with edge ``0-1`` subdivided by vertex 4; the smallest 3-critical graph."""
    return Graph.from_edges(5, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)])
