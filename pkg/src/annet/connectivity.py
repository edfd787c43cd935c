"""Exact connectivity engines and cut certificates.

``kappa_ell(G)`` is the least size of a non-empty vertex set ``F`` such that
``G - F`` has at least ``ell`` components or fewer than ``ell`` vertices.
Two independent engines compute it: plain subset enumeration and a search
over combinations of small connected sets ("fragments").  Among minimum
sets both report the lexicographically smallest, so their witnesses agree.
"""
from __future__ import annotations

import json
import time
from collections import deque
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable, Sequence

from annet import kernels
from annet.graph import TopologyGraph, components_after_removal, from_mask, is_connected, lex_less
from annet.parallel import first_element_slices, map_ordered
from annet.perm import format_perm

SHAPES = ("singleton", "edge", "2-path", "3-cycle", "claw", "paw", "3-path", "other")
FRAGMENT_ELL_CAP = 6


class ConnectivityError(ValueError):
    pass


def classify_shape(g: TopologyGraph, comp: Iterable[int]) -> str:
    """Shape name of a connected component, by size, induced edges and degrees."""
    comp = sorted(comp)
    size = len(comp)
    if size == 1:
        return "singleton"
    if size == 2:
        return "edge"
    if size > 4:
        return "other"
    inside = set(comp)
    degs = [sum(1 for w in g.adjacency[v] if w in inside) for v in comp]
    edges = sum(degs) // 2
    if size == 3:
        return "3-cycle" if edges == 3 else "2-path"
    if edges == 3:
        return "claw" if max(degs) == 3 else "3-path"
    if edges == 4 and max(degs) == 3:
        return "paw"
    return "other"


@dataclass(frozen=True)
class CutCertificate:
    faulty_set: frozenset[int]
    ell: int
    components: tuple[frozenset[int], ...]
    shapes: tuple[str, ...]
    satisfied: bool
    surviving: int
    n: int | None = None
    labels: tuple[str, ...] | None = None
    method: str = "verify"
    elapsed_ms: int = 0

    @property
    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.components]

    @property
    def small_component_shapes(self) -> list[str]:
        return [s for c, s in zip(self.components, self.shapes) if len(c) <= 4]

    def to_dict(self) -> dict:
        doc: dict = {"n": self.n, "ell": self.ell, "faulty": sorted(self.faulty_set)}
        if self.labels is not None:
            doc["faulty_labels"] = list(self.labels)
        doc["components"] = [{"size": len(c), "vertices": sorted(c), "shape": s}
                             for c, s in zip(self.components, self.shapes)]
        doc["satisfied"] = self.satisfied
        doc["method"] = self.method
        doc["elapsed_ms"] = self.elapsed_ms
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class KappaResult:
    value: int
    witness: CutCertificate
    method: str
    nodes_explored: int
    elapsed: float
    #: sizes that were searched exhaustively and found to have no solution
    exhausted: tuple[int, ...] = field(default=())

    def to_dict(self, zero_timings: bool = False) -> dict:
        return {"value": self.value, "method": self.method, "nodes_explored": self.nodes_explored,
                "exhausted": list(self.exhausted),
                "elapsed_ms": 0 if zero_timings else int(self.elapsed * 1000),
                "witness": self.witness.to_dict() | ({"elapsed_ms": 0} if zero_timings else {})}


def verify_cut(g: TopologyGraph, f: Iterable[int], ell: int, *, n: int | None = None,
               labels: Sequence[Sequence[int]] | None = None, method: str = "verify") -> CutCertificate:
    """Decompose ``G - F`` and decide whether ``F`` meets the ``kappa_ell`` condition."""
    f = frozenset(int(x) for x in f)
    if not f:
        raise ConnectivityError("faulty set must be non-empty")
    if any(not 0 <= v < g.vertex_count for v in f):
        raise ConnectivityError("faulty vertex out of range")
    comps = tuple(components_after_removal(g, f))
    surviving = g.vertex_count - len(f)
    satisfied = len(comps) >= ell or surviving < ell
    names = None
    if labels is not None:
        names = tuple(format_perm(labels[v]) for v in sorted(f))
    return CutCertificate(f, ell, comps, tuple(classify_shape(g, c) for c in comps),
                          satisfied, surviving, n=n, labels=names, method=method)


def _check_input(g: TopologyGraph, ell: int) -> None:
    if ell < 2:
        raise ConnectivityError("ell must be >= 2")
    if g.vertex_count < 1 or not is_connected(g):
        raise ConnectivityError("kappa_ell is defined for connected graphs only")


def _degenerate_size(g: TopologyGraph, ell: int) -> int:
    """Smallest non-empty F leaving fewer than ``ell`` vertices."""
    return max(1, g.vertex_count - ell + 1)


# -- classical connectivity ---------------------------------------------------

class _SplitFlow:
    """Unit vertex capacities via in/out splitting; augmenting-path max flow."""

    def __init__(self, g: TopologyGraph):
        self.g = g
        nv = g.vertex_count
        self.size = 2 * nv
        self.head: list[int] = []
        self.cap: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(self.size)]
        big = nv + 1
        for v in range(nv):
            self._arc(2 * v, 2 * v + 1, 1)
        for u, w in g.edges():
            self._arc(2 * u + 1, 2 * w, big)
            self._arc(2 * w + 1, 2 * u, big)
        self.base = list(self.cap)

    def _arc(self, a: int, b: int, c: int) -> None:
        self.out[a].append(len(self.head))
        self.head.append(b)
        self.cap.append(c)
        self.out[b].append(len(self.head))
        self.head.append(a)
        self.cap.append(0)

    def local(self, s: int, t: int, limit: int) -> tuple[int, frozenset[int] | None]:
        """Max number of internally disjoint s-t paths, capped at ``limit``.

        When the flow stays below ``limit`` the minimum separating set is
        returned as well.
        """
        cap = self.cap = list(self.base)
        head, out = self.head, self.out
        src, dst = 2 * s + 1, 2 * t
        flow = 0
        while flow < limit:
            parent = [-1] * self.size
            parent[src] = -2
            queue = deque([src])
            while queue and parent[dst] == -1:
                a = queue.popleft()
                for e in out[a]:
                    b = head[e]
                    if cap[e] > 0 and parent[b] == -1:
                        parent[b] = e
                        queue.append(b)
            if parent[dst] == -1:
                reach = {x for x in range(self.size) if parent[x] != -1}
                cut = frozenset(v for v in range(self.g.vertex_count)
                                if 2 * v in reach and 2 * v + 1 not in reach)
                return flow, cut
            b = dst
            while b != src:
                e = parent[b]
                cap[e] -= 1
                cap[e ^ 1] += 1
                b = head[e ^ 1]
            flow += 1
        return flow, None


def vertex_connectivity(g: TopologyGraph) -> KappaResult:
    """Classical connectivity via Menger duality (Even's pair selection)."""
    start = time.perf_counter()
    nv = g.vertex_count
    if nv < 2:
        raise ConnectivityError("connectivity needs at least 2 vertices")
    if g.is_complete():
        witness = verify_cut(g, range(nv - 1), 2, method="convention")
        return KappaResult(nv - 1, witness, "convention", 0, time.perf_counter() - start)
    if not is_connected(g):
        # the empty set separates; report the convention-free answer 0 with no cut
        raise ConnectivityError("graph is disconnected (connectivity 0, no non-empty witness)")
    adj = g.adjacency
    degs = [len(a) for a in adj]
    v0 = min(range(nv), key=lambda v: (degs[v], v))
    best, best_cut = degs[v0], frozenset(adj[v0])
    flow = _SplitFlow(g)
    pairs = 0
    i = 0
    while i <= best and i < nv:
        nb = set(adj[i])
        for j in range(i + 1, nv):
            if j in nb:
                continue
            pairs += 1
            value, cut = flow.local(i, j, best)
            if value < best:
                best, best_cut = value, cut
        i += 1
    witness = verify_cut(g, best_cut, 2, method="menger")
    return KappaResult(best, witness, "menger", pairs, time.perf_counter() - start)


# -- kappa_ell by subset enumeration -----------------------------------------

def _first_cut_task(args, rows, nv, k, ell):
    lo, hi = args
    return kernels.first_cut(rows, nv, k, ell, lo, hi)


def kappa_ell_exhaustive(g: TopologyGraph, ell: int, k_max: int, *,
                         workers: int = 1) -> KappaResult | None:
    """Enumerate non-empty subsets by size, each size in lexicographic order."""
    _check_input(g, ell)
    start = time.perf_counter()
    nv = g.vertex_count
    rows = g.rows
    degenerate = _degenerate_size(g, ell)
    examined = 0
    exhausted = []
    for k in range(1, min(k_max, nv) + 1):
        if k >= degenerate:
            examined += 1
            return _result(g, range(k), ell, "exhaustive", examined, start, exhausted)
        task = partial(_first_cut_task, rows=rows, nv=nv, k=k, ell=ell)
        found = -1
        for mask, count in map_ordered(task, first_element_slices(nv, k), workers):
            examined += count
            if mask >= 0:
                found = mask
                break
        if found >= 0:
            return _result(g, from_mask(found), ell, "exhaustive", examined, start, exhausted)
        exhausted.append(k)
    return None


def _result(g, f, ell, method, nodes, start, exhausted) -> KappaResult:
    cert = verify_cut(g, f, ell, method=method)
    if not cert.satisfied:
        raise AssertionError(f"{method} engine produced an unsatisfied witness {sorted(cert.faulty_set)}")
    elapsed = time.perf_counter() - start
    cert = _with_elapsed(cert, elapsed)
    return KappaResult(len(cert.faulty_set), cert, method, nodes, elapsed, tuple(exhausted))


def _with_elapsed(cert: CutCertificate, elapsed: float) -> CutCertificate:
    from dataclasses import replace
    return replace(cert, elapsed_ms=int(elapsed * 1000))


# -- kappa_ell by fragment combination ---------------------------------------

def _grow_task(args, rows, nv, max_size, budget, weight):
    lo, hi = args
    return kernels.grow_fragments(rows, nv, max_size, budget, weight, lo, hi)


def collect_fragments(g: TopologyGraph, max_size: int, budget: int, weight_limit: int = -1,
                      workers: int = 1) -> tuple[list[tuple[int, int]], int]:
    """Bitset fragments ``(interior, boundary)`` sorted by size then interior order."""
    nv = g.vertex_count
    task = partial(_grow_task, rows=g.rows, nv=nv, max_size=max_size, budget=budget, weight=weight_limit)
    if workers > 1:
        slices = [(v, v + 1) for v in range(nv)]
    else:
        slices = [(0, nv)]
    frags: list[tuple[int, int]] = []
    nodes = 0
    for found, count in map_ordered(task, slices, workers):
        frags.extend(found)
        nodes += count
    frags.sort(key=lambda sb: (sb[0].bit_count(), _sort_key(sb[0])))
    return frags, nodes


def _sort_key(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def combine_fragments(frags: Sequence[tuple[int, int]], parts: int, k: int, nv: int,
                      caps: Sequence[int]) -> tuple[int, int]:
    """Lexicographically smallest union of boundaries over ``parts`` pairwise
    disjoint, non-adjacent fragments (non-decreasing in size, the ``d``-th at
    most ``caps[d]`` vertices) whose boundary union has at most ``k``
    vertices and misses at least one vertex.  Returns ``(mask or -1, nodes)``.
    """
    full = (1 << nv) - 1
    items = [(s, b, s.bit_count(), s | b) for s, b in frags if b.bit_count() <= k]
    best = -1
    best_size = k
    nodes = 0

    def rec(start: int, depth: int, union_b: int, union_closed: int) -> None:
        nonlocal best, best_size, nodes
        cap = caps[depth]
        for j in range(start, len(items)):
            s, b, size, closed = items[j]
            if size > cap:
                break
            if s & union_closed:
                continue
            nb = union_b | b
            bsize = nb.bit_count()
            if bsize > best_size:
                continue
            nodes += 1
            closed2 = union_closed | closed
            if depth + 1 == parts:
                if closed2 != full and (best < 0 or bsize < best_size or lex_less(nb, best)):
                    best, best_size = nb, bsize
            else:
                rec(j + 1, depth + 1, nb, closed2)

    rec(0, 0, 0, 0)
    return best, nodes


def size_caps(nv: int, k: int, ell: int) -> list[int]:
    """Caps for the ell-1 smallest components of ``G - F`` with ``|F| = k``."""
    return [(nv - k) // (ell - i) for i in range(ell - 1)]


def kappa_ell_fragment_search(g: TopologyGraph, ell: int, k_max: int, *,
                              workers: int = 1, ell_cap: int = FRAGMENT_ELL_CAP) -> KappaResult | None:
    """Iterative deepening on ``k``: ``G - F`` has ``>= ell`` components with
    ``|F| <= k`` iff ``ell - 1`` pairwise disjoint, non-adjacent fragments have
    a boundary union of at most ``k`` vertices that leaves some vertex outside
    all their closed neighbourhoods.
    """
    _check_input(g, ell)
    if ell > ell_cap:
        raise ConnectivityError(f"fragment engine supports ell <= {ell_cap}")
    start = time.perf_counter()
    nv = g.vertex_count
    degenerate = _degenerate_size(g, ell)
    nodes = 0
    exhausted = []
    for k in range(1, min(k_max, nv) + 1):
        if k >= degenerate:
            return _result(g, range(k), ell, "fragment", nodes + 1, start, exhausted)
        caps = size_caps(nv, k, ell)
        # 2|S| + |N(S)| <= nv follows from the largest cap and never decreases as S grows
        frags, grown = collect_fragments(g, caps[-1], k, nv, workers)
        found, combos = combine_fragments(frags, ell - 1, k, nv, caps)
        nodes += grown + combos
        if found >= 0:
            return _result(g, from_mask(found), ell, "fragment", nodes, start, exhausted)
        exhausted.append(k)
    return None


def default_k_max(n: int) -> int:
    """One past the claimed kappa_4(AN_n) = 3n - 6, enough to certify minimality."""
    return 3 * n - 6 + 1
