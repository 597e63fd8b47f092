import random
from fractions import Fraction

import networkx as nx
import pytest

from starfactor.errors import BoundExceededError, GraphFormatError
from starfactor.graph import Graph
from starfactor.matching import DegreeBounds
from starfactor.named import complete, cycle, double_star, long_double_star, paw, path, petersen, star
from starfactor.oracle import (
    CorpusSpec,
    brute_chromatic_index,
    brute_factor_enum,
    brute_fractional,
    brute_gamma_min,
    brute_independence_number,
    brute_max_matching,
    brute_min_k12,
    brute_witness,
    canonical_form,
    enumerate_graphs,
    load_corpus,
    random_graph,
    save_corpus,
)


def test_brute_values():
    assert brute_max_matching(cycle(5)) == 2
    assert brute_max_matching(complete(4)) == 2
    assert brute_max_matching(petersen()) == 5
    assert brute_fractional(cycle(3)) == Fraction(3, 2)
    assert brute_fractional(paw()) == 2
    assert brute_fractional(star(3)) == 1
    assert brute_witness(star(3)) == (2, frozenset({0}))
    assert brute_witness(cycle(5)) == (0, frozenset())
    assert brute_witness(long_double_star())[0] == 2


def test_factor_enumeration():
    c4 = brute_factor_enum(cycle(4))
    assert any(f.cycles for f in c4)
    assert sum(1 for f in c4 if f.t == {1: 2}) == 2
    assert len(brute_factor_enum(star(3))) == 1
    assert brute_factor_enum(double_star(), max_star=2, through_edge=(0, 1)) == []


def test_min_k12_independence_chromatic():
    assert brute_min_k12(star(2)) == 1
    assert brute_min_k12(cycle(6)) == 0
    assert brute_min_k12(star(3)) is None
    assert brute_independence_number(cycle(5)) == 2
    assert brute_independence_number(petersen()) == 4
    assert brute_independence_number(complete(4)) == 1
    assert brute_chromatic_index(cycle(5)) == 3
    assert brute_chromatic_index(cycle(6)) == 2
    assert brute_chromatic_index(star(3)) == 3


def test_gamma_min():
    assert brute_gamma_min(path(3), DegreeBounds.uniform(3, 1, 2)) >= 0


def test_bounds_enforced():
    with pytest.raises(BoundExceededError):
        brute_factor_enum(complete(9))
    with pytest.raises(BoundExceededError):
        CorpusSpec(11)


def test_enumeration_counts():
    counts = {}
    for g in enumerate_graphs(CorpusSpec(6, connected_only=True)):
        counts[g.n] = counts.get(g.n, 0) + 1
    assert counts == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}
    assert [g.n for g in enumerate_graphs(CorpusSpec(1))] == [1]
    all_counts = {}
    for g in enumerate_graphs(CorpusSpec(5)):
        all_counts[g.n] = all_counts.get(g.n, 0) + 1
    assert all_counts == {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}


def test_canonical_form_is_isomorphism_invariant():
    rng = random.Random(9)
    for _ in range(100):
        g = random_graph(rng.randint(1, 8), rng)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        assert canonical_form(g) == canonical_form(h)


def test_enumeration_is_pairwise_non_isomorphic():
    graphs = list(enumerate_graphs(CorpusSpec(5, n_min=5)))
    nxg = [nx.Graph(list(g.edges)) for g in graphs]
    for g, x in zip(graphs, nxg):
        x.add_nodes_from(range(g.n))
    for i in range(len(nxg)):
        for j in range(i + 1, len(nxg)):
            assert not nx.is_isomorphic(nxg[i], nxg[j])


def test_corpus_round_trip(tmp_path):
    p = tmp_path / "c.g6"
    graphs = list(enumerate_graphs(CorpusSpec(4)))
    save_corpus(p, graphs)
    assert load_corpus(p) == graphs
    p.write_text("Cs\n!!!\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        load_corpus(p)
