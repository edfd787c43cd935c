from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from annet import build_an
from annet.graph import TopologyGraph


@pytest.fixture(scope="session")
def an3():
    return build_an(3)


@pytest.fixture(scope="session")
def an4():
    return build_an(4)


@pytest.fixture(scope="session")
def an5():
    return build_an(5)


@pytest.fixture(scope="session")
def an6():
    return build_an(6)


def _inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def oracle_adjacent(p, q) -> bool:
    """Pairwise test of the three AN_n adjacency conditions, 1-based positions."""
    n = len(p)
    P = (None,) + tuple(p)
    Q = (None,) + tuple(q)

    def rest_equal(skip):
        return all(P[j] == Q[j] for j in range(1, n + 1) if j not in skip)

    if P[1] == Q[2] and P[2] == Q[3] and P[3] == Q[1] and rest_equal({1, 2, 3}):
        return True
    if P[1] == Q[3] and P[2] == Q[1] and P[3] == Q[2] and rest_equal({1, 2, 3}):
        return True
    for i in range(4, n + 1):
        if (P[1] == Q[2] and P[2] == Q[1] and P[3] == Q[i] and P[i] == Q[3]
                and rest_equal({1, 2, 3, i})):
            return True
    return False


def oracle_an(n: int) -> nx.Graph:
    """AN_n built independently by an all-pairs test, nodes labelled by tuples."""
    verts = [p for p in itertools.permutations(range(1, n + 1)) if _inversions(p) % 2 == 0]
    g = nx.Graph()
    g.add_nodes_from(verts)
    for a, b in itertools.combinations(verts, 2):
        if oracle_adjacent(a, b):
            g.add_edge(a, b)
    return g


def to_nx(g: TopologyGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def random_connected_graph(rng: np.random.Generator, nv: int, p: float) -> TopologyGraph:
    """A random spanning tree plus independent extra edges with probability ``p``."""
    order = rng.permutation(nv)
    edges = set()
    for i in range(1, nv):
        a, b = int(order[i]), int(order[rng.integers(0, i)])
        edges.add((min(a, b), max(a, b)))
    for a in range(nv):
        for b in range(a + 1, nv):
            if rng.random() < p:
                edges.add((a, b))
    return TopologyGraph(nv, sorted(edges))


def random_corpus(count: int, seed: int, max_vertices: int = 14) -> list[TopologyGraph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        nv = int(rng.integers(2, max_vertices + 1))
        p = float(rng.choice([0.0, 0.1, 0.2, 0.35, 0.6]))
        out.append(random_connected_graph(rng, nv, p))
    return out


def brute_kappa_ell(g: TopologyGraph, ell: int) -> tuple[int, tuple[int, ...]]:
    """Reference value via networkx over all subsets in size/lex order."""
    h = to_nx(g)
    nv = g.vertex_count
    for k in range(1, nv + 1):
        for f in itertools.combinations(range(nv), k):
            rest = h.subgraph(set(range(nv)) - set(f))
            if nv - k < ell or nx.number_connected_components(rest) >= ell:
                return k, f
    raise AssertionError("unreachable")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
