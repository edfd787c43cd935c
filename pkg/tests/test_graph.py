import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from annet.graph import (GraphError, TopologyGraph, all_pairs_diameter, components_after_removal,
                         eccentricity, enumerate_fragments, find_induced_six_cycle, format_edge_list,
                         has_cycle_of_length, is_connected_subset, is_induced_cycle, lex_less,
                         open_neighborhood, read_edge_list, to_mask)

from conftest import random_connected_graph, to_nx


def path_graph(k):
    return TopologyGraph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k):
    return TopologyGraph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k):
    return TopologyGraph(k, itertools.combinations(range(k), 2))


@st.composite
def graphs(draw, max_vertices=12):
    nv = draw(st.integers(1, max_vertices))
    pairs = list(itertools.combinations(range(nv), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return TopologyGraph(nv, chosen)


@st.composite
def connected_graphs(draw, max_vertices=14):
    seed = draw(st.integers(0, 2**32 - 1))
    nv = draw(st.integers(1, max_vertices))
    p = draw(st.sampled_from([0.0, 0.15, 0.3, 0.6]))
    return random_connected_graph(np.random.default_rng(seed), nv, p)


# -- construction ---------------------------------------------------------------

def test_construction_rejects_bad_edges():
    with pytest.raises(GraphError):
        TopologyGraph(3, [(0, 3)])
    with pytest.raises(GraphError):
        TopologyGraph(3, [(1, 1)])


def test_basic_queries():
    g = TopologyGraph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert g.edge_count == 4
    assert g.neighbors(2) == (0, 1, 3)
    assert g.has_edge(3, 2) and not g.has_edge(0, 3)
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2), (2, 3)]
    sub, old = g.induced([0, 2, 3])
    assert list(old) == [0, 2, 3] and sub.edge_count == 2
    assert TopologyGraph.from_adjacency(g.adjacency) == g


def test_edge_list_round_trip(tmp_path, an4):
    path = tmp_path / "an4.edges"
    path.write_text("# AN_4\n" + format_edge_list(an4.graph))
    assert read_edge_list(path) == an4.graph


@pytest.mark.parametrize("text", ["0 1\n1 0\n", "0 0\n", "0 1 2\n", "a b\n", "-1 2\n"])
def test_edge_list_rejects(tmp_path, text):
    path = tmp_path / "bad.edges"
    path.write_text(text)
    with pytest.raises(GraphError):
        read_edge_list(path)


# -- components -----------------------------------------------------------------

def test_components_examples(an5):
    assert components_after_removal(an5.graph, ()) == [frozenset(range(60))]
    for v in range(60):
        comps = components_after_removal(an5.graph, an5.graph.neighbors(v))
        assert [len(c) for c in comps] == [1, 55] and comps[0] == {v}
    assert components_after_removal(path_graph(4), {1}) == [frozenset({0}), frozenset({2, 3})]


def test_component_ordering_ties_by_min_id():
    g = TopologyGraph(5, [(3, 4), (0, 1)])
    assert components_after_removal(g) == [frozenset({2}), frozenset({0, 1}), frozenset({3, 4})]


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_components_partition_property(g, data):
    f = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    comps = components_after_removal(g, f)
    union = set().union(*comps) if comps else set()
    assert union == set(range(g.vertex_count)) - f
    assert sum(len(c) for c in comps) == len(union)
    for c in comps:
        assert is_connected_subset(g, c)
        assert not (open_neighborhood(g, c) - f)
    ref = nx.number_connected_components(to_nx(g).subgraph(union)) if union else 0
    assert len(comps) == ref


def test_open_neighborhood_examples(an5):
    g = an5.graph
    assert open_neighborhood(g, ()) == frozenset()
    assert open_neighborhood(g, {7}) == frozenset(g.neighbors(7))
    assert open_neighborhood(g, range(60)) == frozenset()


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_open_neighborhood_disjoint(g, data):
    s = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    nb = open_neighborhood(g, s)
    assert not (nb & s)
    assert nb == {w for u in s for w in g.neighbors(u)} - s


def test_connected_subset_examples(an4):
    g = an4.graph
    assert is_connected_subset(g, {5})
    u = 0
    far = next(v for v in range(12) if v != u and not g.has_edge(u, v))
    assert not is_connected_subset(g, {u, far})
    tri = next(t for t in itertools.combinations(range(12), 3)
               if all(g.has_edge(a, b) for a, b in itertools.combinations(t, 2)))
    assert is_connected_subset(g, tri)


# -- cycles ---------------------------------------------------------------------

def test_cycle_examples(an4):
    assert not has_cycle_of_length(an4.graph, 4)
    assert not has_cycle_of_length(an4.graph, 5)
    assert has_cycle_of_length(an4.graph, 3)
    tri = [an4.vertex(p) for p in [(1, 2, 3, 4), (3, 1, 2, 4), (2, 3, 1, 4)]]
    assert all(an4.graph.has_edge(a, b) for a, b in itertools.combinations(tri, 2))
    assert has_cycle_of_length(cycle_graph(4), 4)


def brute_has_cycle(g, k):
    for combo in itertools.combinations(range(g.vertex_count), k):
        first = combo[0]
        for rest in itertools.permutations(combo[1:]):
            if rest[0] > rest[-1]:
                continue
            order = (first,) + rest
            if all(g.has_edge(order[i], order[(i + 1) % k]) for i in range(k)):
                return True
    return False


@settings(max_examples=50, deadline=None)
@given(graphs(max_vertices=9), st.integers(3, 6))
def test_cycle_detection_matches_brute_force(g, k):
    assert has_cycle_of_length(g, k) == brute_has_cycle(g, k)


def test_six_cycle_examples(an4, an5):
    assert find_induced_six_cycle(cycle_graph(6)) == (0, 1, 2, 3, 4, 5)
    assert find_induced_six_cycle(complete_graph(4)) is None
    c = find_induced_six_cycle(an4.graph)
    assert c == (0, 3, 2, 9, 1, 6)
    assert is_induced_cycle(an4.graph, c)
    assert is_induced_cycle(an5.graph, find_induced_six_cycle(an5.graph))


def brute_six_cycle(g):
    for order in itertools.permutations(range(g.vertex_count), 6):
        if order[0] == min(order) and is_induced_cycle(g, order):
            return order
    return None


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=8))
def test_six_cycle_is_lex_smallest(g):
    assert find_induced_six_cycle(g) == brute_six_cycle(g)


# -- fragments ------------------------------------------------------------------

def brute_fragments(g, max_size, budget):
    out = set()
    for k in range(1, max_size + 1):
        for s in itertools.combinations(range(g.vertex_count), k):
            if is_connected_subset(g, s) and len(open_neighborhood(g, s)) <= budget:
                out.add(frozenset(s))
    return out


def test_fragment_examples(an4, an5):
    frags = list(enumerate_fragments(an5.graph, 1, 4))
    assert len(frags) == 60 and all(len(f.boundary) == 4 for f in frags)
    assert list(enumerate_fragments(an5.graph, 1, 3)) == []
    got = [f.interior for f in enumerate_fragments(an4.graph, 3, 4)]
    assert len(got) == len(set(got))
    assert set(got) == brute_fragments(an4.graph, 3, 4)


def test_fragment_seed_slices_are_disjoint(an4):
    whole = {f.interior for f in enumerate_fragments(an4.graph, 4, 6)}
    parts = [{f.interior for f in enumerate_fragments(an4.graph, 4, 6, seeds=range(a, a + 3))}
             for a in range(0, 12, 3)]
    assert set().union(*parts) == whole
    assert sum(len(p) for p in parts) == len(whole)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_vertices=11), st.integers(1, 6), st.integers(0, 8))
def test_fragments_match_brute_force(g, max_size, budget):
    got = list(enumerate_fragments(g, max_size, budget))
    interiors = [f.interior for f in got]
    assert len(interiors) == len(set(interiors))
    assert set(interiors) == brute_fragments(g, max_size, budget)
    for f in got:
        assert f.boundary == open_neighborhood(g, f.interior)


def test_fragment_argument_errors(an4):
    with pytest.raises(GraphError):
        list(enumerate_fragments(an4.graph, 0, 3))


# -- distances ------------------------------------------------------------------

def test_diameter_examples(an4, an5):
    assert all_pairs_diameter(an4.graph) == 3
    assert all_pairs_diameter(an5.graph) == 5
    assert all_pairs_diameter(complete_graph(5)) == 1
    assert eccentricity(an5.graph, 0) == 5


def test_diameter_rejects_disconnected():
    with pytest.raises(GraphError):
        all_pairs_diameter(TopologyGraph(3, [(0, 1)]))


@settings(max_examples=30, deadline=None)
@given(connected_graphs())
def test_diameter_matches_networkx(g):
    assert all_pairs_diameter(g) == (nx.diameter(to_nx(g)) if g.vertex_count > 1 else 0)


def test_lex_less():
    assert lex_less(to_mask([0, 5]), to_mask([1, 2]))
    assert not lex_less(to_mask([1, 2]), to_mask([0, 5]))
    assert lex_less(to_mask([0, 1, 9]), to_mask([0, 2, 3]))
