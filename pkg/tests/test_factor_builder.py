import random

import pytest

from starfactor.errors import NoFactorError
from starfactor.factors import (
    StarCycleFactor,
    build_minimal_factor,
    decompose_paths,
    has_k12_factor,
    k12_factor_with_edge,
    min_k12,
)
from starfactor.fractional import fractional_matching_number
from starfactor.gallai_edmonds import structure_report
from starfactor.graph import Graph
from starfactor.named import complete, cycle, double_star, long_double_star, path, petersen, star
from starfactor.oracle import random_connected_graph, summarize_factors


def test_c5_single_cycle():
    f = build_minimal_factor(cycle(5))
    assert f.cycles == ((0, 1, 2, 3, 4),) and not f.stars
    assert f.excess == 0


def test_star_factor():
    f = build_minimal_factor(star(3))
    assert f.stars == ((0, (1, 2, 3)),) and f.excess == 2
    assert build_minimal_factor(star(3), max_star=2) is None


def test_isolated_vertex_raises():
    with pytest.raises(NoFactorError):
        build_minimal_factor(Graph.from_edges(3, [(0, 1)]))


def test_min_k12_examples():
    assert min_k12(path(3)) == 1
    assert min_k12(cycle(6)) == 0
    assert min_k12(star(3)) is None


def test_decompose_paths():
    p5 = path(5)
    f = decompose_paths(p5.edges, p5)
    assert f.t == {1: 1, 2: 1}
    p4 = path(4)
    assert decompose_paths(p4.edges, p4).t == {1: 2}
    c4 = cycle(4)
    assert decompose_paths(c4.edges, c4).cycles == ((0, 1, 2, 3),)
    with pytest.raises(ValueError):
        decompose_paths(star(3).edges, star(3))


def test_p4_keep():
    p4 = path(4)
    f = decompose_paths(p4.edges, p4, keep=(0, 1))
    assert f.contains_edge(0, 1)
    # Keeping the middle edge would need a piece of four vertices.
    with pytest.raises(ValueError):
        decompose_paths(p4.edges, p4, keep=(1, 2))
    p5 = path(5)
    f = decompose_paths(p5.edges, p5, keep=(1, 2))
    assert f.contains_edge(1, 2) and f.t == {1: 1, 2: 1}


def test_double_star_uv_excluded():
    g = double_star()
    assert has_k12_factor(g)
    assert k12_factor_with_edge(g, (0, 1)) is None
    assert k12_factor_with_edge(g, (0, 2)) is not None


def test_factor_structure_random():
    rng = random.Random(2)
    for _ in range(300):
        g = random_connected_graph(rng.randint(2, 12), rng)
        f = build_minimal_factor(g)
        f.validate(g)
        assert f.excess == g.n - 2 * fractional_matching_number(g)
        r = structure_report(g)
        for c, ls in f.stars:
            if len(ls) >= 2:
                assert c in r.witness


def test_lambda_matches_enumeration():
    rng = random.Random(4)
    for _ in range(150):
        g = random_connected_graph(rng.randint(2, 8), rng)
        s = summarize_factors(g)
        f = build_minimal_factor(g)
        assert f.excess == s.min_excess
        assert min_k12(g) == s.min_t2


def test_named_graphs():
    assert build_minimal_factor(petersen()).excess == 0
    assert build_minimal_factor(complete(7)).excess == 0
    assert build_minimal_factor(long_double_star()).excess == 2


def test_from_edges_and_json():
    f = StarCycleFactor.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert f.t == {1: 1, 2: 1}
    js = f.to_json()
    assert js["n"] == 1 and js["lambda_achieved"] == 2
    with pytest.raises(ValueError):
        StarCycleFactor.from_edges(3, [(0, 1)])
