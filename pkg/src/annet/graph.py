"""Immutable undirected graphs and the combinatorial primitives built on them.

Vertex sets cross the public API as ``frozenset[int]``; internally the hot
paths work on Python-int bitsets (bit ``v`` set means vertex ``v`` present).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from annet import kernels

#: Graphs at or below this many vertices get per-vertex bit rows.
BITROW_THRESHOLD = 4096

VertexSet = frozenset


class GraphError(ValueError):
    pass


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lex_less(a: int, b: int) -> bool:
    """True if bitset ``a`` precedes ``b`` as a sorted id sequence (equal sizes)."""
    d = a ^ b
    return bool(d and a & (d & -d))


@dataclass(frozen=True)
class Fragment:
    """A connected vertex set together with its open neighbourhood."""

    interior: frozenset[int]
    boundary: frozenset[int]


class TopologyGraph:
    """Undirected simple graph in CSR form.

    ``adjacency`` (tuple of sorted neighbour tuples) and ``rows`` (bitset per
    vertex, only for graphs up to :data:`BITROW_THRESHOLD` vertices) are built
    lazily from the CSR arrays.
    """

    __slots__ = ("vertex_count", "indptr", "indices", "_adjacency", "_rows")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise GraphError("negative vertex count")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if len(arr):
            if arr.min() < 0 or arr.max() >= vertex_count:
                raise GraphError("edge endpoint out of range")
            if np.any(arr[:, 0] == arr[:, 1]):
                raise GraphError("self-loops are not allowed")
        both = np.concatenate([arr, arr[:, ::-1]], axis=0)
        both = np.unique(both, axis=0) if len(both) else both
        self._set_csr(vertex_count, both[:, 0] if len(both) else np.zeros(0, np.int64),
                      both[:, 1] if len(both) else np.zeros(0, np.int64))

    def _set_csr(self, vertex_count: int, src: np.ndarray, dst: np.ndarray) -> None:
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        counts = np.bincount(src, minlength=vertex_count)
        indptr = np.zeros(vertex_count + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self.vertex_count = vertex_count
        self.indptr = indptr
        self.indices = dst.astype(np.int32 if vertex_count < 2**31 else np.int64)
        self._adjacency = None
        self._rows = None

    @classmethod
    def from_directed_arcs(cls, vertex_count: int, src: np.ndarray, dst: np.ndarray) -> "TopologyGraph":
        """Build from an arc list already containing both directions of every edge."""
        g = cls.__new__(cls)
        g._set_csr(vertex_count, np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64))
        return g

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "TopologyGraph":
        edges = [(u, v) for u, nb in enumerate(adjacency) for v in nb if u < v]
        return cls(len(adjacency), edges)

    # -- basic queries -------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        if self._adjacency is None:
            flat = self.indices.tolist()
            ptr = self.indptr.tolist()
            self._adjacency = tuple(tuple(flat[ptr[v]:ptr[v + 1]]) for v in range(self.vertex_count))
        return self._adjacency

    @property
    def rows(self) -> tuple[int, ...]:
        if self._rows is None:
            if self.vertex_count > BITROW_THRESHOLD:
                raise GraphError(
                    f"bit rows need <= {BITROW_THRESHOLD} vertices, graph has {self.vertex_count}")
            self._rows = tuple(to_mask(nb) for nb in self.adjacency)
        return self._rows

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, u: int, v: int) -> bool:
        lo, hi = self.indptr[u], self.indptr[u + 1]
        i = np.searchsorted(self.indices[lo:hi], v)
        return bool(i < hi - lo and self.indices[lo + i] == v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending order."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield u, v

    def induced(self, vertices: Iterable[int]) -> tuple["TopologyGraph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the old ids in order."""
        old = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u in old for v in self.adjacency[u] if v in new_id and u < v]
        return TopologyGraph(len(old), edges), old

    def is_complete(self) -> bool:
        n = self.vertex_count
        return self.edge_count == n * (n - 1) // 2

    def __repr__(self) -> str:
        return f"TopologyGraph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TopologyGraph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    __hash__ = None  # type: ignore[assignment]


# -- edge-list text format ----------------------------------------------------

def read_edge_list(path: str | Path) -> TopologyGraph:
    """Parse ``u v`` lines (0-based, undirected); ``#`` starts a comment."""
    edges = []
    seen = set()
    top = -1
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"{path}:{lineno}: non-integer vertex id in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"{path}:{lineno}: negative vertex id")
        if u == v:
            raise GraphError(f"{path}:{lineno}: self-loop {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"{path}:{lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
        top = max(top, u, v)
    return TopologyGraph(top + 1, edges)


def format_edge_list(g: TopologyGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# -- components and neighbourhoods -------------------------------------------

def components_after_removal(g: TopologyGraph, f: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of ``G - F``, ascending by size then smallest id."""
    removed = set(f)
    seen = set(removed)
    adj = g.adjacency
    comps = []
    for s in range(g.vertex_count):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), min(c)))
    return comps


def open_neighborhood(g: TopologyGraph, s: Iterable[int]) -> frozenset[int]:
    s = set(s)
    adj = g.adjacency
    return frozenset(w for u in s for w in adj[u] if w not in s)


def is_connected_subset(g: TopologyGraph, s: Iterable[int]) -> bool:
    s = set(s)
    if len(s) <= 1:
        return True
    adj = g.adjacency
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(s)


def is_connected(g: TopologyGraph) -> bool:
    return g.vertex_count == 0 or len(components_after_removal(g)) == 1


def induced_edge_count(g: TopologyGraph, s: Iterable[int]) -> int:
    s = set(s)
    adj = g.adjacency
    return sum(1 for u in s for w in adj[u] if w in s) // 2


# -- cycles -------------------------------------------------------------------

def has_cycle_of_length(g: TopologyGraph, k: int) -> bool:
    """True iff ``g`` has a (not necessarily induced) cycle of length ``k``.

    Searches simple paths of length ``k - 1`` from each vertex ``s`` through
    vertices larger than ``s`` only, so every cycle is found from its minimum.
    """
    if k < 3:
        raise GraphError("cycle length must be >= 3")
    if k > g.vertex_count:
        return False
    adj = g.adjacency

    def extend(s: int, u: int, depth: int, on_path: set[int]) -> bool:
        if depth == k - 1:
            return s in adj[u]
        for w in adj[u]:
            if w > s and w not in on_path:
                on_path.add(w)
                if extend(s, w, depth + 1, on_path):
                    return True
                on_path.discard(w)
        return False

    return any(extend(s, s, 0, {s}) for s in range(g.vertex_count))


def find_induced_six_cycle(g: TopologyGraph) -> tuple[int, ...] | None:
    """Lexicographically smallest ``(v1, ..., v6)`` forming an induced 6-cycle."""
    adj = g.adjacency
    nbr = [set(a) for a in adj]

    def extend(path: list[int]) -> tuple[int, ...] | None:
        s, last = path[0], path[-1]
        for w in adj[last]:
            if w <= s or w in path:
                continue
            # w may touch only its predecessor, and v1 exactly when it closes the cycle
            closing = len(path) == 5
            if any(x in nbr[w] for x in path[1:-1]):
                continue
            if (s in nbr[w]) != closing and len(path) > 1:
                continue
            path.append(w)
            if closing:
                return tuple(path)
            found = extend(path)
            if found:
                return found
            path.pop()
        return None

    for s in range(g.vertex_count):
        found = extend([s])
        if found:
            return found
    return None


def is_induced_cycle(g: TopologyGraph, cycle: Sequence[int]) -> bool:
    """Independent validity check for an induced cycle given in order."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    if any(not g.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)):
        return False
    return induced_edge_count(g, cycle) == k


# -- fragments ----------------------------------------------------------------

def enumerate_fragments(g: TopologyGraph, max_size: int, boundary_budget: int,
                        seeds: range | None = None) -> Iterator[Fragment]:
    """Every connected set of at most ``max_size`` vertices whose open
    neighbourhood has at most ``boundary_budget`` vertices, each exactly once.

    Sets are grown from their minimum vertex; ``seeds`` restricts which
    minimum vertices are used, so disjoint seed ranges give disjoint output.
    """
    if max_size < 1 or boundary_budget < 0:
        raise GraphError("max_size must be >= 1 and boundary_budget >= 0")
    seeds = seeds if seeds is not None else range(g.vertex_count)
    found, _ = kernels.grow_fragments(g.rows, g.vertex_count, max_size, boundary_budget,
                                      -1, seeds.start, seeds.stop)
    for mask, bmask in found:
        yield Fragment(from_mask(mask), from_mask(bmask))


# -- distances ----------------------------------------------------------------

def eccentricity(g: TopologyGraph, v: int) -> int:
    """BFS eccentricity of ``v``; raises on a disconnected graph."""
    from scipy.sparse.csgraph import shortest_path

    dist = shortest_path(_csr(g), unweighted=True, indices=[v])[0]
    if not np.isfinite(dist).all():
        raise GraphError("graph is disconnected")
    return int(dist.max())


def all_pairs_diameter(g: TopologyGraph, chunk: int = 256) -> int:
    """Maximum eccentricity over all vertices."""
    from scipy.sparse.csgraph import shortest_path

    if g.vertex_count == 0:
        raise GraphError("empty graph")
    mat = _csr(g)
    best = 0
    for lo in range(0, g.vertex_count, chunk):
        dist = shortest_path(mat, unweighted=True, indices=range(lo, min(lo + chunk, g.vertex_count)))
        if not np.isfinite(dist).all():
            raise GraphError("graph is disconnected")
        best = max(best, int(dist.max()))
    return best


def _csr(g: TopologyGraph):
    from scipy.sparse import csr_matrix

    data = np.ones(len(g.indices), dtype=np.int8)
    return csr_matrix((data, g.indices, g.indptr), shape=(g.vertex_count, g.vertex_count))
