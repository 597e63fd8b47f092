import pytest

from starfactor.edge_test import (
    ExclusionCertificate,
    edge_in_some_k12_factor,
    find_exclusion_certificate,
    forced_zero_weight,
)
from starfactor.errors import BoundExceededError, InvariantViolation, NoFactorError
from starfactor.graph import Graph
from starfactor.named import complete, cycle, double_star, long_double_star, paw, path, star, unbalanced_double_star
from starfactor.oracle import brute_factor_enum


def test_double_star():
    g = double_star()
    assert edge_in_some_k12_factor(g, (0, 1)) is False
    cert = find_exclusion_certificate(g, (0, 1))
    assert cert.S == {0, 1} and cert.iso_count == 4
    assert cert.to_json() == {"S": [0, 1], "iso": 4, "edge": [0, 1]}
    assert forced_zero_weight(g, (0, 1))
    assert brute_factor_enum(g, max_star=2, through_edge=(0, 1)) == []


def test_tightness_fixtures():
    cert = find_exclusion_certificate(unbalanced_double_star(), (0, 1))
    assert cert.S == {0, 1} and cert.iso_count == 3
    cert = find_exclusion_certificate(long_double_star(), (4, 5))
    assert cert.iso_count == 6 and {4, 5} <= cert.S and len(cert.S) == 4


def test_included_edges_have_no_certificate():
    g = cycle(6)
    for e in g.edges:
        assert edge_in_some_k12_factor(g, e)
        assert find_exclusion_certificate(g, e) is None


def test_forced_zero_examples():
    assert forced_zero_weight(paw(), (0, 1))
    assert forced_zero_weight(path(4), (1, 2))
    assert not forced_zero_weight(cycle(5), (0, 1))


def test_errors():
    with pytest.raises(NoFactorError):
        edge_in_some_k12_factor(star(3), (0, 1))
    with pytest.raises(ValueError):
        edge_in_some_k12_factor(cycle(5), (0, 2))
    with pytest.raises(BoundExceededError):
        find_exclusion_certificate(complete(6), (0, 1), bound=5)


def test_certificate_validation():
    with pytest.raises(InvariantViolation):
        ExclusionCertificate(frozenset({0, 1}), 3, (0, 1)).validate(double_star())


def test_excluded_edge_with_positive_fractional_weight():
    # Being outside every factor with stars of at most two leaves does not force
    # zero weight in every maximum fractional matching.
    g = Graph.from_edges(6, [(0, 4), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)])
    assert not edge_in_some_k12_factor(g, (3, 5))
    assert brute_factor_enum(g, max_star=2, through_edge=(3, 5)) == []
    assert not forced_zero_weight(g, (3, 5))
