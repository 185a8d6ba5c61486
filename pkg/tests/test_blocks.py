import logging

import networkx as nx
import pytest

from parablocks.blocks import (
    EmptyCoset,
    block_decomposition_oracle,
    components,
    linkage_graph,
    same_block,
)
from parablocks.jantzen import jantzen_row
from parablocks.rootsys import RootSystem, make_parabolic, parabolic_from_excluded
from parablocks.weights import NotIntegral, Weight, WeightNotInCoset, canonical_dominant, enumerate_coset

B6 = parabolic_from_excluded(RootSystem("B", 6), [2, 6])
B6_DOMINANT = Weight.of(2, 1, 1, 1, 0, 0)


def test_b6_has_four_singleton_blocks():
    dec = block_decomposition_oracle(B6, B6_DOMINANT)
    assert dec.oracle_count == 4
    assert dec.blocks == ((0,), (1,), (2,), (3,))
    assert dec.agreement is None


def test_b2_two_blocks():
    b2 = make_parabolic(RootSystem("B", 2), [1])
    dec = block_decomposition_oracle(b2, Weight.of(1, 0))
    assert dec.oracle_count == 2
    assert not same_block(b2, Weight.of(1, 0), Weight.of(1, 0), Weight.of(0, -1))


def test_b3_single_block():
    b3 = make_parabolic(RootSystem("B", 3), [1, 3])
    dom = Weight.of(1, 1, 0)
    dec = block_decomposition_oracle(b3, dom)
    assert dec.oracle_count == 1
    assert same_block(b3, dom, Weight.of(1, 0, 1), Weight.of(0, -1, 1))


def test_block_lookup_errors():
    dec = block_decomposition_oracle(B6, B6_DOMINANT)
    with pytest.raises(WeightNotInCoset):
        dec.block_of(Weight.of(0, 0, 0, 0, 0, 0))
    with pytest.raises(NotIntegral):
        block_decomposition_oracle(B6, Weight.of(2, 1, 1, 1, 0, "1/2"))


def test_empty_coset_graph():
    d4 = make_parabolic(RootSystem("D", 4), [1, 3])
    assert linkage_graph(d4, Weight.of(1, 1, 1, -1)).empty
    assert block_decomposition_oracle(d4, Weight.of(1, 1, 1, -1)).oracle_count == 0
    assert issubclass(EmptyCoset, ValueError)


def test_components_match_networkx():
    edges = [(0, 1), (2, 3), (3, 4), (6, 6)]
    g = nx.Graph()
    g.add_nodes_from(range(8))
    g.add_edges_from(edges)
    expected = sorted(tuple(sorted(c)) for c in nx.connected_components(g))
    assert list(components(8, edges)) == expected
    assert components(0, []) == ()


@pytest.mark.parametrize("family,n", [("B", 3), ("C", 3), ("D", 4), ("A", 4)])
def test_graph_edges_come_from_nonzero_coefficients(family, n, caplog):
    rs = RootSystem(family, n)
    caplog.set_level(logging.WARNING, logger="parablocks.blocks")
    for mask in range(1 << rs.simple_count):
        pd = make_parabolic(rs, [k + 1 for k in range(rs.simple_count) if mask >> k & 1])
        dom = canonical_dominant(rs, [k + 1 for k in range(rs.simple_count) if (mask >> k & 1) == 0])
        graph = linkage_graph(pd, dom)
        coset = enumerate_coset(pd, dom)
        assert list(graph.vertices) == coset
        expected = set()
        for i, x in enumerate(coset):
            for y, entry in jantzen_row(pd, x).items():
                if entry.c:
                    j = coset.index(y)
                    expected.add((min(i, j), max(i, j)))
        assert set(graph.edges) == expected
        dec = block_decomposition_oracle(pd, dom)
        assert sorted(i for b in dec.blocks for i in b) == list(range(len(coset)))
    # the coefficients only ever point downwards, so no two-way edges are reported
    assert not caplog.records


def test_graph_json():
    data = linkage_graph(B6, B6_DOMINANT).to_json()
    assert len(data["vertices"]) == 4
    assert data["edges"] == []
