import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starfactor.fractional import (
    FractionalMatching,
    canonical_max_fractional_matching,
    canonicalize,
    fractional_matching_number,
    is_canonical,
    max_fractional_matching_with_edge,
    odd_circuits,
)
from starfactor.graph import Graph
from starfactor.named import complete, cycle, dumbbell, paw, petersen, star
from starfactor.oracle import brute_fractional, random_graph

H = Fraction(1, 2)


def test_values():
    assert fractional_matching_number(cycle(3)) == Fraction(3, 2)
    assert fractional_matching_number(paw()) == 2
    assert fractional_matching_number(star(3)) == 1
    assert fractional_matching_number(petersen()) == 5


def test_c5_canonical():
    h = canonical_max_fractional_matching(cycle(5))
    assert all(h.weight(*e) == H for e in cycle(5).edges)
    assert len(odd_circuits(h)) == 1
    assert h.to_json()["value"] == "5/2"


def test_c4_even_circuit_eliminated():
    c4 = cycle(4)
    h = FractionalMatching(4, {e: H for e in c4.edges})
    out = canonicalize(c4, h)
    assert out.value == 2
    assert sorted(out.weights.values()) == [1, 1]
    assert is_canonical(c4, out)


def test_dumbbell_rational_example():
    # Triangles 0-1-2 and 3-4-5 joined by the bridge 0-3.
    g = dumbbell(1)
    q = Fraction(1, 4)
    h = FractionalMatching(
        6,
        {(0, 1): q, (0, 2): q, (1, 2): 3 * q, (0, 3): H, (3, 4): q, (3, 5): q, (4, 5): 3 * q},
    )
    assert h.is_valid_in(g) and h.value == 3
    out = canonicalize(g, h)
    assert out.value == 3 and out.is_half_integral and is_canonical(g, out)
    assert canonicalize(g, out) == out


def test_canonicalize_rejects_non_maximum():
    with pytest.raises(ValueError):
        canonicalize(cycle(4), FractionalMatching(4, {(0, 1): H}))
    with pytest.raises(ValueError):
        FractionalMatching(2, {(0, 1): Fraction(3, 2)})


@pytest.mark.parametrize("e", cycle(4).edges)
def test_c4_any_edge(e):
    h = max_fractional_matching_with_edge(cycle(4), e)
    assert h.weight(*e) == 1


def test_protected_edge_kept():
    rng = random.Random(5)
    for _ in range(200):
        g = random_graph(rng.randint(2, 9), rng)
        for e in g.edges:
            h = max_fractional_matching_with_edge(g, e)
            if h is not None:
                assert h.weight(*e) > 0
                assert h.value == fractional_matching_number(g)
                assert is_canonical(g, h)


def test_json_round_trip():
    h = canonical_max_fractional_matching(complete(5))
    assert FractionalMatching.from_json(5, h.to_json()) == h


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_property_canonical_optimum(g):
    h = canonical_max_fractional_matching(g)
    assert h.value == fractional_matching_number(g) == brute_fractional(g)
    assert is_canonical(g, h) and h.is_half_integral
    assert canonicalize(g, h) == h
