import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from redicol.constructions import freezable_path_pair, frozen_4regular
from redicol.digraph import (Digraph, GraphFormatError, bidirect, complete_graph, digirth,
                             digons, directed_cycle, girth, induced_subdigraph, is_acyclic,
                             is_bidirected, is_oriented, parse_digraph, parse_graph,
                             serialize_digraph, serialize_graph, transitive_tournament,
                             underlying_graph, cycle_graph, topological_order, INFINITY)


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, arcs)


def test_parse_c3_and_digon():
    C3 = parse_digraph("3 3\n0 1\n1 2\n2 0\n")
    assert C3 == directed_cycle(3)
    D = parse_digraph("2 2\n0 1\n1 0")
    assert digons(D) == [(0, 1)]


def test_parse_errors_carry_line():
    with pytest.raises(GraphFormatError) as e:
        parse_digraph("3 3\n0 1\n0 1\n1 2")
    assert e.value.line == 3 and "duplicate" in str(e.value)
    for bad in ["", "3\n", "2 1\n0 0", "2 1\n0 5", "2 2\n0 1", "2 1\n0 x"]:
        with pytest.raises(GraphFormatError):
            parse_digraph(bad)
    with pytest.raises(GraphFormatError):
        parse_graph("2 1\n1 0")


def test_comments_and_blank_lines():
    D = parse_digraph("# c3\n3 3\n\n0 1\n# x\n1 2\n2 0\n")
    assert D.m == 3


@given(digraphs())
def test_roundtrip(D):
    assert parse_digraph(serialize_digraph(D)) == D
    G = underlying_graph(D)
    assert parse_graph(serialize_graph(G)) == G


def test_acyclicity_examples():
    assert is_acyclic(transitive_tournament(3))
    assert not is_acyclic(directed_cycle(3))
    assert not is_acyclic(frozen_4regular().D)


def test_digons_and_oriented():
    K2 = bidirect(complete_graph(2))
    assert digons(K2) == [(0, 1)] and not is_oriented(K2)
    assert digons(directed_cycle(3)) == [] and is_oriented(directed_cycle(3))
    F5 = freezable_path_pair(5).D
    assert digons(F5) == [] and is_oriented(F5)


def test_digirth_examples():
    assert digirth(directed_cycle(3)) == 3
    assert digirth(bidirect(complete_graph(2))) == 2
    assert digirth(transitive_tournament(3)) == INFINITY


def test_fig1_digirth_matches_oracle():
    # a->e->f->a is a directed triangle, so the digirth is 3, not 4
    D = frozen_4regular().D
    assert digirth(D) == oracles.digirth(D.n, list(D.arcs)) == 3


@settings(max_examples=200)
@given(digraphs())
def test_digirth_oracle_and_acyclicity(D):
    g = digirth(D)
    o = oracles.digirth(D.n, list(D.arcs))
    assert g == (INFINITY if o is None else o)
    assert is_acyclic(D) == (g == INFINITY)
    assert is_acyclic(D) == oracles.acyclic(range(D.n), list(D.arcs))
    assert is_oriented(D) == (g >= 3)
    order = topological_order(D)
    assert (order is None) == (not is_acyclic(D))
    if order is not None:
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in D.arcs)


def test_bidirect_and_underlying():
    K3 = complete_graph(3)
    D = bidirect(K3)
    assert D.n == 3 and D.m == 6 and is_bidirected(D)
    assert underlying_graph(directed_cycle(3)) == K3
    assert underlying_graph(D) == K3


def test_girth():
    assert girth(cycle_graph(5)) == 5
    assert girth(complete_graph(4)) == 3
    assert girth(complete_graph(2)) == math.inf


def test_induced():
    H, old = induced_subdigraph(directed_cycle(3), [0, 1])
    assert list(H.arcs) == [(0, 1)] and old == [0, 1]
    D = frozen_4regular().D
    H, old = induced_subdigraph(D, range(D.n))
    assert H == D
    H, old = induced_subdigraph(D, [0, 2, 4, 6])
    assert H.n == 4 and H.m == 2 and is_acyclic(H)


def test_invalid_construction():
    with pytest.raises(ValueError):
        Digraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Digraph(2, [(0, 3)])
