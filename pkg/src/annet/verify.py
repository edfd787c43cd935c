"""Constructive cuts and exhaustive audits of the structural claims about AN_n.

Every audit returns a :class:`LemmaReport`.  A report passes only when the
enumeration behind it was complete and found no counterexample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import partial
from math import comb, factorial

from annet import kernels
from annet.connectivity import (CutCertificate, kappa_ell_fragment_search, verify_cut)
from annet.graph import (TopologyGraph, find_induced_six_cycle, from_mask, has_cycle_of_length,
                         open_neighborhood, to_mask)
from annet.kernels import CYCLE3, EDGE, OTHER, PATH2, PAW, SINGLETON
from annet.network import AnNetwork, class_is_isomorphic_to_smaller, out_neighbor, subnet_partition
from annet.parallel import default_workers, first_element_slices, map_ordered

SHAPE_NAMES = ("singleton", "edge", "2-path", "3-cycle", "claw", "paw", "3-path", "other")

#: Subset enumerations above this many sets need ``long_running=True``.
LONG_RUNNING_SUBSETS = 500_000_000


class VerifyError(ValueError):
    pass


@dataclass
class LemmaReport:
    lemma_id: str
    n: int
    instances_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and self.instances_checked > 0

    def to_dict(self) -> dict:
        return {"lemma": self.lemma_id, "n": self.n, "checked": self.instances_checked,
                "violations": self.violations, "passed": self.passed, "details": self.details}


# -- constructive cuts --------------------------------------------------------

def cut_vertex_neighborhood(net: AnNetwork, v: int) -> frozenset[int]:
    if net.n < 4:
        raise VerifyError("vertex-neighbourhood cuts are considered for n >= 4")
    if not 0 <= v < net.vertex_count:
        raise VerifyError(f"vertex {v} out of range")
    return frozenset(net.graph.adjacency[v])


def cut_edge_neighborhood(net: AnNetwork, u: int, v: int) -> frozenset[int]:
    if not net.graph.has_edge(u, v):
        raise VerifyError(f"{u} and {v} are not adjacent")
    return open_neighborhood(net.graph, (u, v))


def cut_six_cycle(net: AnNetwork) -> tuple[frozenset[int], tuple[int, ...]]:
    """Neighbourhood of alternate vertices of the smallest induced 6-cycle."""
    if net.n < 4:
        raise VerifyError("six-cycle cut needs n >= 4")
    cycle = find_induced_six_cycle(net.graph)
    if cycle is None:
        raise VerifyError(f"no induced 6-cycle in AN_{net.n}")
    return open_neighborhood(net.graph, cycle[0::2]), cycle


def certify(net: AnNetwork, f, ell: int, method: str = "verify") -> CutCertificate:
    return verify_cut(net.graph, f, ell, n=net.n, labels=net.labels, method=method)


# -- cycles, out-neighbours, cross edges ------------------------------------------------------------------

def verify_basic_lemma(net: AnNetwork) -> LemmaReport:
    """No 4- or 5-cycles; distinct out-neighbours per class; (n-2)!/2 cross edges per class pair."""
    if net.n < 4:
        raise VerifyError("needs n >= 4")
    rep = LemmaReport("basic", net.n)
    g = net.graph
    for k in (4, 5):
        rep.instances_checked += 1
        if has_cycle_of_length(g, k):
            rep.violations.append({"clause": 1, "observed": f"{k}-cycle present", "expected": "none"})
    part = net.partition
    for i in range(1, net.n + 1):
        members = [v for v in range(g.vertex_count) if part[v] == i]
        outs = {}
        for v in members:
            rep.instances_checked += 1
            external = [w for w in g.adjacency[v] if part[w] != i]
            if len(external) != 1 or external[0] != out_neighbor(net, v):
                rep.violations.append({"clause": 2, "vertex": v, "observed": external,
                                       "expected": "exactly one out-neighbour"})
                continue
            outs.setdefault(external[0], []).append(v)
        for w, vs in outs.items():
            if len(vs) > 1:
                rep.violations.append({"clause": 2, "class": i, "vertices": vs, "shared_out_neighbor": w})
    expected = factorial(net.n - 2) // 2
    counts = subnet_partition(net).external_counts
    for (i, j), c in counts.items():
        rep.instances_checked += 1
        if c != expected:
            rep.violations.append({"clause": 3, "pair": [i, j], "observed": c, "expected": expected})
    rep.details["cross_edges_per_pair"] = expected
    return rep


# -- neighbourhoods of small subgraphs ------------------------------------------------------------------

def _class_graph(net: AnNetwork, i: int) -> TopologyGraph:
    g, _ = net.graph.induced(v for v in range(net.vertex_count) if net.partition[v] == i)
    return g


def _bounds_histogram(g: TopologyGraph, max_size: int) -> tuple[dict, int]:
    found, nodes = kernels.grow_fragments(g.rows, g.vertex_count, max_size, g.vertex_count, -1,
                                          0, g.vertex_count)
    hist: dict = {}
    for s, b in found:
        size = s.bit_count()
        if size < 3:
            continue
        key = (size, SHAPE_NAMES[kernels.shape_code(g.rows, s)], b.bit_count())
        hist[key] = hist.get(key, 0) + 1
    return hist, len(found)


def verify_subgraph_neighborhood_bounds(net: AnNetwork, class_index: int | None = None,
                                        spot_class: int | None = None) -> LemmaReport:
    """Audit the in-class neighbourhood sizes of small connected induced subgraphs.

    Sizes 3 and 4 are enumerated completely.  For larger subgraphs, up to
    half the class, a pruned search looks for any connected set whose
    neighbourhood is at most ``4n - 16`` (size >= 5) or below it (size >= 4).
    """
    n = net.n
    if n < 6:
        raise VerifyError("the subgraph neighbourhood audit needs n >= 6")
    i = class_index or n
    g = _class_graph(net, i)
    rep = LemmaReport("subgraph", n)
    hist, count = _bounds_histogram(g, 4)
    rep.instances_checked += count
    tri, path2, four = 3 * n - 12, (3 * n - 11, 3 * n - 10), 4 * n - 16
    per_shape = {"paw": (four, four), "claw": (4 * n - 15, 4 * n - 14), "3-path": (four, 4 * n - 14)}
    observed: dict = {}
    for (size, shape, nb), c in sorted(hist.items()):
        lo_hi = observed.setdefault(shape, [nb, nb])
        lo_hi[0], lo_hi[1] = min(lo_hi[0], nb), max(lo_hi[1], nb)
        bad = None
        if size == 3:
            if shape == "3-cycle" and nb != tri:
                bad = f"|N(H)| = {tri}"
            elif shape == "2-path" and not path2[0] <= nb <= path2[1]:
                bad = f"{path2[0]} <= |N(H)| <= {path2[1]}"
            elif shape not in ("3-cycle", "2-path"):
                bad = "3-cycle or 2-path"
        else:
            if nb < four:
                bad = f"|N(H)| >= {four}"
            elif shape in per_shape and not per_shape[shape][0] <= nb <= per_shape[shape][1]:
                bad = f"{per_shape[shape][0]} <= |N(H)| <= {per_shape[shape][1]} for a {shape}"
        if bad:
            rep.violations.append({"size": size, "shape": shape, "neighborhood": nb, "count": c,
                                   "expected": bad})
    # larger subgraphs: exhaustive pruned search for small neighbourhoods
    half = factorial(n - 1) // 4 - 1
    found, nodes = kernels.grow_fragments(g.rows, g.vertex_count, half, four, -1, 0, g.vertex_count)
    rep.instances_checked += nodes
    for s, b in found:
        size, nb = s.bit_count(), b.bit_count()
        if size >= 5 or (size == 4 and nb < four):
            rep.violations.append({"size": size, "neighborhood": nb, "vertices": sorted(from_mask(s)),
                                   "expected": f"|N(H)| > {four}" if size >= 5 else f"|N(H)| >= {four}"})
    rep.details.update({
        "class": i,
        "histogram": {f"{size}/{shape}/{nb}": c for (size, shape, nb), c in sorted(hist.items())},
        "observed_neighborhood_range": observed,
        "large_search_max_size": half,
        # the printed upper bound n-10 for 3-vertex components is not asserted
        "path2_upper_as_printed": n - 10,
        "path2_upper_asserted": path2[1],
    })
    if spot_class is None:
        spot_class = 1 if i != 1 else 2
    rep.instances_checked += 1
    if not class_is_isomorphic_to_smaller(net, i) or not class_is_isomorphic_to_smaller(net, spot_class):
        rep.violations.append({"check": "class isomorphic to AN_{n-1}", "classes": [i, spot_class]})
    spot_hist, spot_count = _bounds_histogram(_class_graph(net, spot_class), 4)
    rep.instances_checked += spot_count
    if spot_hist != hist:
        rep.violations.append({"check": "second class has the same histogram", "class": spot_class})
    rep.details["spot_class"] = spot_class
    return rep


# -- structure of small vertex-cuts --------------------------------------------

CLAIMS = {
    # name: (minimum n, bound on |F| as a function of n)
    "lemma3": (5, lambda n: 2 * n - 5),
    "lemma4": (5, lambda n: 3 * n - 10),
    "lemma5": (4, lambda n: 2 * n - 4),
    "corollary": (5, lambda n: 3 * n - 7),
}


def _claim_holds(claim: str, n: int, key: tuple) -> bool:
    shapes = [code for _, code in key]
    ncomp = len(key)
    if claim == "lemma3":
        return ncomp == 2 and any(c in (SINGLETON, EDGE) for c in shapes)
    if claim == "lemma4":
        return ((ncomp == 2 and any(c in (SINGLETON, EDGE) for c in shapes))
                or (ncomp == 3 and shapes.count(SINGLETON) >= 2))
    if claim == "lemma5":
        allowed = {4: (SINGLETON, EDGE, CYCLE3, PATH2, PAW), 5: (SINGLETON, EDGE, CYCLE3)}.get(
            n, (SINGLETON, EDGE))
        return ncomp == 2 and any(c in allowed for c in shapes)
    if claim == "corollary":
        return ((ncomp == 2 and any(c in (SINGLETON, EDGE, CYCLE3, PATH2) for c in shapes))
                or (ncomp == 3 and shapes.count(SINGLETON) >= 2))
    raise VerifyError(f"unknown claim {claim!r}")


def _scan_task(args, rows, nv, k):
    lo, hi = args
    return kernels.scan_cuts(rows, nv, k, lo, hi)


def scan_all_cuts(g: TopologyGraph, k: int, workers: int = 1) -> tuple[int, dict]:
    """Signature table of every disconnecting ``k``-subset (see ``scan_cuts``)."""
    task = partial(_scan_task, rows=g.rows, nv=g.vertex_count, k=k)
    slices = first_element_slices(g.vertex_count, k) if workers > 1 else [(0, g.vertex_count)]
    examined = 0
    table: dict = {}
    for count, part in map_ordered(task, slices, workers):
        examined += count
        for key, (c, first) in part.items():
            entry = table.get(key)
            if entry is None:
                table[key] = [c, first]
            else:
                entry[0] += c
                # slices arrive in order of their minimum element, so the earlier first mask wins
    return examined, table


def subsets_up_to(nv: int, k_max: int) -> int:
    return sum(comb(nv, k) for k in range(1, k_max + 1))


def _describe(key: tuple) -> str:
    return " + ".join(f"{SHAPE_NAMES[code]}({size})" if code != OTHER else f"size {size}"
                      for size, code in key)


def verify_small_cut_structure(net: AnNetwork, k_max: int, claim: str, *, workers: int | None = None,
                               long_running: bool = False) -> LemmaReport:
    """Classify ``G - F`` for every vertex-cut ``F`` with ``|F| <= k_max``."""
    if claim not in CLAIMS:
        raise VerifyError(f"unknown claim {claim!r}; expected one of {sorted(CLAIMS)}")
    min_n, bound = CLAIMS[claim]
    n = net.n
    if n < min_n or k_max > bound(n) or k_max < 1:
        raise VerifyError(f"{claim} needs n >= {min_n} and 1 <= |F| <= {bound(n)} (got n={n}, k_max={k_max})")
    g = net.graph
    cost = subsets_up_to(g.vertex_count, k_max)
    if cost > LONG_RUNNING_SUBSETS and not long_running:
        raise VerifyError(f"{claim} at |F| <= {k_max} enumerates {cost:,} subsets; pass long_running=True")
    workers = default_workers() if workers is None else workers
    rep = LemmaReport(claim, n)
    summary: dict = {}
    edge_sets: dict[int, int] = {}
    for k in range(1, k_max + 1):
        examined, table = scan_all_cuts(g, k, workers)
        rep.instances_checked += examined
        for key, (count, first) in sorted(table.items()):
            summary[f"|F|={k}: {_describe(key)}"] = count
            if (2, EDGE) in key:
                edge_sets[k] = edge_sets.get(k, 0) + count
            if not _claim_holds(claim, n, key):
                rep.violations.append({"size": k, "observed": _describe(key), "count": count,
                                       "faulty": sorted(from_mask(first))})
    if claim == "lemma3":
        _check_edge_cuts(net, k_max, edge_sets, rep)
    rep.details["k_max"] = k_max
    rep.details["cut_classes"] = summary
    return rep


def _check_edge_cuts(net: AnNetwork, k_max: int, edge_sets: dict[int, int], rep: LemmaReport) -> None:
    """An edge component forces ``F = N({u, v})`` with ``|F| = 2n - 5``.

    Every ``F`` that leaves an edge ``(u, v)`` as a component contains
    ``N({u, v})``; counting both sides shows they coincide.
    """
    g = net.graph
    expected: dict[int, set[int]] = {}
    for u, v in g.edges():
        f = open_neighborhood(g, (u, v))
        if len(f) <= k_max:
            cert = verify_cut(g, f, 2)
            if any(len(c) == 2 and set(c) == {u, v} for c in cert.components):
                expected.setdefault(len(f), set()).add(to_mask(f))
    for k in sorted(set(edge_sets) | set(expected)):
        observed, neigh = edge_sets.get(k, 0), len(expected.get(k, ()))
        if observed != neigh or (observed and k != 2 * net.n - 5):
            rep.violations.append({"size": k, "observed_edge_cuts": observed,
                                   "edge_neighborhood_cuts": neigh,
                                   "expected": f"edge components only at |F| = {2 * net.n - 5}, F = N(u,v)"})
    rep.details["edge_component_cuts"] = {str(k): v for k, v in sorted(edge_sets.items())}


# -- super-connectivity --------------------------------------------------------

def verify_super_connectivity(net: AnNetwork, *, workers: int | None = None, samples: int = 2000,
                              seed: int = 0) -> LemmaReport:
    """n = 5: tightly (n-1)-super-connected; n = 4: a minimum cut that is no N(v)."""
    n = net.n
    g = net.graph
    workers = default_workers() if workers is None else workers
    rep = LemmaReport("super", n)
    neighborhoods = {to_mask(g.adjacency[v]) for v in range(g.vertex_count)}
    if g.vertex_count <= 64:
        for k in range(1, n - 1):
            examined, table = scan_all_cuts(g, k, workers)
            rep.instances_checked += examined
            for key, (count, first) in table.items():
                rep.violations.append({"size": k, "observed": _describe(key), "count": count,
                                       "faulty": sorted(from_mask(first)),
                                       "expected": f"no vertex-cut smaller than {n - 1}"})
        examined, table = scan_all_cuts(g, n - 1, workers)
        rep.instances_checked += examined
        total = sum(c for c, _ in table.values())
        rep.details["minimum_cuts"] = total
        rep.details["cut_classes"] = {_describe(k): c for k, (c, _) in sorted(table.items())}
        non_trivial = [(k, c, first) for k, (c, first) in sorted(table.items()) if (1, SINGLETON) not in k]
        if n == 4:
            if non_trivial:
                key, count, first = non_trivial[0]
                rep.details["counterexample"] = {"faulty": sorted(from_mask(first)),
                                                 "labels": [_label(net, v) for v in sorted(from_mask(first))],
                                                 "observed": _describe(key), "count": count}
            else:
                rep.violations.append({"expected": "a minimum cut that is not a vertex neighbourhood"})
        else:
            for key, count, first in non_trivial:
                rep.violations.append({"size": n - 1, "observed": _describe(key), "count": count,
                                       "faulty": sorted(from_mask(first)), "expected": "N(v) for some v"})
            for key, (count, first) in table.items():
                if len(key) != 2:
                    rep.violations.append({"observed": _describe(key), "expected": "exactly 2 components"})
            if total != len(neighborhoods):
                rep.violations.append({"observed_minimum_cuts": total,
                                       "distinct_neighborhoods": len(neighborhoods)})
        return rep
    # larger n: every N(v), plus random perturbations of neighbourhoods
    rng = random.Random(seed)
    for v in range(g.vertex_count):
        rep.instances_checked += 1
        cert = verify_cut(g, g.adjacency[v], 2)
        if cert.component_sizes[:1] != [1] or len(cert.components) != 2:
            rep.violations.append({"vertex": v, "observed": cert.component_sizes})
    for _ in range(samples):
        v = rng.randrange(g.vertex_count)
        ball = sorted({x for w in g.adjacency[v] for x in g.adjacency[w]} | set(g.adjacency[v]))
        f = rng.sample(ball, n - 1)
        rep.instances_checked += 1
        cert = verify_cut(g, f, 2)
        if len(cert.components) > 1 and to_mask(f) not in neighborhoods:
            rep.violations.append({"faulty": sorted(f), "observed": cert.component_sizes,
                                   "expected": "N(v) for some v"})
    rep.details["mode"] = "sampled"
    return rep


def _label(net: AnNetwork, v: int) -> str:
    return "".join(str(x) for x in net.label(v))


# -- the four-component bound --------------------------------------------------

def verify_component_theorem(net: AnNetwork, *, workers: int = 1, exact_up_to: int = 64) -> LemmaReport:
    """Upper bound via the six-cycle cut for any n; exact value by the fragment
    engine when the network has at most ``exact_up_to`` vertices."""
    n = net.n
    rep = LemmaReport("theorem", n)
    target = 3 * n - 6
    f, cycle = cut_six_cycle(net)
    cert = certify(net, f, 4)
    rep.instances_checked += 1
    singles = sorted(next(iter(c)) for c in cert.components if len(c) == 1)
    if len(f) != target or not cert.satisfied or singles != sorted(cycle[0::2]):
        rep.violations.append({"check": "six-cycle cut", "size": len(f), "singletons": singles,
                               "components": cert.component_sizes, "expected": f"|F| = {target}"})
    rep.details["six_cycle"] = list(cycle)
    rep.details["six_cycle_cut"] = cert.to_dict()
    if net.vertex_count <= exact_up_to:
        for ell, claimed in ((3, 2 * n - 3), (4, target)):
            res = kappa_ell_fragment_search(net.graph, ell, claimed, workers=workers)
            value = None if res is None else res.value
            rep.details[f"kappa_{ell}"] = value
            if res is not None:
                rep.instances_checked += res.nodes_explored
            if res is None or value != claimed or list(res.exhausted) != list(range(1, claimed)):
                rep.violations.append({"check": f"kappa_{ell}", "observed": value, "expected": claimed})
    return rep
