"""Alternating group networks AN_n built from the permutation-level rules.

Two even permutations ``p`` and ``q`` are adjacent when ``q`` arises from
``p`` by one of

* rotating the first three symbols one way, ``q = (p3, p1, p2, ...)``;
* rotating them the other way, ``q = (p2, p3, p1, ...)``;
* for some position ``i >= 4``, swapping positions 1,2 together with
  positions 3,i.

Positions are 1-based in this description and 0-based in code.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Sequence

import numpy as np

from annet import perm
from annet.graph import TopologyGraph
from annet.perm import Permutation, PermutationError

#: Largest dimension built by default (10!/2 = 1,814,400 vertices).
MAX_DIMENSION = 10


class NetworkError(ValueError):
    pass


def _generator_positions(n: int) -> list[list[int]]:
    """Position maps ``g`` with ``q[j] = p[g[j]]``, in rule order (i), (ii), (iii)."""
    ident = list(range(n))
    gens = [[2, 0, 1] + ident[3:], [1, 2, 0] + ident[3:]]
    for i in range(3, n):
        g = [1, 0] + ident[2:]
        g[2], g[i] = i, 2
        gens.append(g)
    return gens


def an_neighbors(p: Sequence[int]) -> list[Permutation]:
    """Neighbours of an even permutation: rules (i), (ii), then (iii) for i = 4..n."""
    p = perm.validate(p)
    n = len(p)
    if n < 3:
        raise PermutationError("AN_n needs n >= 3")
    if perm.parity(p) != "even":
        raise PermutationError(f"{p!r} is odd; AN_n vertices are even permutations")
    return [tuple(p[j] for j in g) for g in _generator_positions(n)]


@dataclass(frozen=True, eq=False)
class AnNetwork:
    n: int
    graph: TopologyGraph
    #: even permutations as 1-based symbol rows, indexed by vertex id
    table: np.ndarray = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def label(self, v: int) -> Permutation:
        return tuple(int(x) for x in self.table[v])

    @cached_property
    def labels(self) -> tuple[Permutation, ...]:
        return tuple(tuple(row) for row in self.table.tolist())

    @cached_property
    def partition(self) -> np.ndarray:
        """Class (last symbol, ``1..n``) of every vertex."""
        return self.table[:, -1].astype(np.int64)

    def vertex(self, p: Sequence[int]) -> int:
        p = perm.validate(p)
        if len(p) != self.n:
            raise PermutationError(f"expected {self.n} symbols, got {len(p)}")
        return perm.rank_even(p)


def build_an(n: int, cap: int = MAX_DIMENSION) -> AnNetwork:
    """Build AN_n; vertex ``r`` is the ``r``-th even permutation in lexicographic order."""
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise NetworkError(f"dimension must be an integer >= 3, got {n!r}")
    if n > cap:
        raise NetworkError(f"dimension {n} exceeds cap {cap}")
    n = int(n)
    table = perm.all_permutations_lex(n)
    table = table[perm.parity_rows(table) == 0]
    count = len(table)
    src_parts, dst_parts = [], []
    ids = np.arange(count, dtype=np.int64)
    for g in _generator_positions(n):
        nbr = perm.even_rank_rows(table[:, g])
        src_parts.append(ids)
        dst_parts.append(nbr)
    graph = TopologyGraph.from_directed_arcs(count, np.concatenate(src_parts), np.concatenate(dst_parts))
    return AnNetwork(n=n, graph=graph, table=(table + 1).astype(np.int8))


def out_neighbor(net: AnNetwork, v: int) -> int:
    """The unique neighbour of ``v`` outside its own class (rule (iii) with i = n)."""
    if net.n < 4:
        raise NetworkError("out-neighbours are defined for n >= 4 only")
    if not 0 <= v < net.vertex_count:
        raise NetworkError(f"vertex {v} out of range")
    p = net.label(v)
    q = list(p)
    q[0], q[1] = p[1], p[0]
    q[2], q[-1] = p[-1], p[2]
    return perm.rank_even(q)


@dataclass(frozen=True)
class PartitionReport:
    n: int
    classes: dict[int, tuple[int, ...]]
    external_edges: dict[tuple[int, int], tuple[tuple[int, int], ...]]

    @property
    def class_sizes(self) -> dict[int, int]:
        return {i: len(c) for i, c in self.classes.items()}

    @property
    def external_counts(self) -> dict[tuple[int, int], int]:
        return {pair: len(e) for pair, e in self.external_edges.items()}

    def consistent(self) -> bool:
        """Class sizes ``(n-1)!/2`` and ``(n-2)!/2`` external edges per class pair."""
        if self.n < 4:
            return False
        size = factorial(self.n - 1) // 2
        cross = factorial(self.n - 2) // 2
        return (all(s == size for s in self.class_sizes.values())
                and all(c == cross for c in self.external_counts.values()))


def subnet_partition(net: AnNetwork) -> PartitionReport:
    part = net.partition
    classes = {i: tuple(np.flatnonzero(part == i).tolist()) for i in range(1, net.n + 1)}
    external: dict[tuple[int, int], list[tuple[int, int]]] = {
        pair: [] for pair in combinations(range(1, net.n + 1), 2)}
    for u, v in net.graph.edges():
        a, b = int(part[u]), int(part[v])
        if a != b:
            key = (a, b) if a < b else (b, a)
            external[key].append((u, v))
    return PartitionReport(net.n, classes, {k: tuple(e) for k, e in external.items()})


def class_relabeling(net: AnNetwork, i: int) -> dict[int, Permutation]:
    """Map each vertex of class ``i`` to an even permutation of ``1..n-1``.

    The last symbol is dropped and the remaining symbols are renamed
    order-preservingly; when that yields odd permutations (it does exactly
    when ``n - i`` is odd), the names of the two largest symbols are also
    exchanged.  Adjacency rules only compare positions, so any renaming of
    symbols preserves adjacency.
    """
    keep = [s for s in range(1, net.n + 1) if s != i]
    rename = {s: k + 1 for k, s in enumerate(keep)}
    if (net.n - i) % 2 == 1:
        m = net.n - 1
        a, b = keep[m - 2], keep[m - 1]
        rename[a], rename[b] = m, m - 1
    out = {}
    for v in np.flatnonzero(net.partition == i).tolist():
        out[v] = tuple(rename[s] for s in net.label(v)[:-1])
    return out


def class_is_isomorphic_to_smaller(net: AnNetwork, i: int, smaller: AnNetwork | None = None) -> bool:
    """Check class ``i`` against AN_{n-1} via :func:`class_relabeling`."""
    if net.n < 4:
        return False
    smaller = smaller or build_an(net.n - 1)
    relabel = class_relabeling(net, i)
    if any(perm.parity(q) != "even" for q in relabel.values()):
        return False
    image = {v: perm.rank_even(q) for v, q in relabel.items()}
    if sorted(image.values()) != list(range(smaller.vertex_count)):
        return False
    adj = net.graph.adjacency
    sadj = smaller.graph.adjacency
    for v, r in image.items():
        inside = sorted(image[w] for w in adj[v] if w in image)
        if inside != list(sadj[r]):
            return False
    return True
