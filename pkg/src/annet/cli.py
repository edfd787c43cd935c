"""``an`` command line: generate networks, run the engines and audits, export.

Exit codes: 0 success, 1 a checked claim failed (or engines disagree),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from math import comb
from pathlib import Path

from annet import __version__, kernels
from annet.connectivity import (ConnectivityError, KappaResult, default_k_max, kappa_ell_exhaustive,
                                kappa_ell_fragment_search, vertex_connectivity, verify_cut)
from annet.graph import (BITROW_THRESHOLD, GraphError, TopologyGraph, all_pairs_diameter,
                         eccentricity, format_edge_list, read_edge_list)
from annet.network import MAX_DIMENSION, AnNetwork, NetworkError, build_an, subnet_partition
from annet.parallel import default_workers
from annet.perm import format_perm
from annet.verify import (LONG_RUNNING_SUBSETS, LemmaReport, VerifyError, certify, cut_edge_neighborhood,
                          cut_six_cycle, cut_vertex_neighborhood, subsets_up_to, verify_basic_lemma,
                          verify_component_theorem, verify_small_cut_structure,
                          verify_subgraph_neighborhood_bounds, verify_super_connectivity)

#: Exact all-pairs diameter up to this many vertices; beyond, eccentricity of vertex 0.
ALL_PAIRS_LIMIT = 5040


class UsageError(Exception):
    pass


class Ledger:
    """Append-only record of one run, written as JSON with ``--json``."""

    def __init__(self, argv: list[str], config: dict, zero_timings: bool):
        self.argv = argv
        self.config = config
        self.zero = zero_timings
        self.results: list[dict] = []
        self.timings: dict[str, int] = {}

    def add(self, task: str, kind: str, payload: dict, seconds: float = 0.0) -> None:
        self.results.append({"task": task, "type": kind, "payload": payload})
        self.timings[task] = 0 if self.zero else int(seconds * 1000)

    def to_dict(self) -> dict:
        return {"tool": "annet", "version": __version__, "command": self.argv,
                "config": self.config, "results": self.results, "timings": self.timings}

    def write(self, path: str | None) -> None:
        if path:
            text = json.dumps(self.to_dict(), indent=2, sort_keys=False)
            Path(path).write_text(text + "\n")


def _zero_elapsed(doc):
    if isinstance(doc, dict):
        return {k: (0 if k == "elapsed_ms" else _zero_elapsed(v)) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_zero_elapsed(x) for x in doc]
    return doc


# -- exports --------------------------------------------------------------------

def export_dot(g: TopologyGraph, labels=None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.vertex_count):
        if labels is not None:
            lines.append(f'  {v} [label="{format_perm(labels[v])}"];')
        else:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(net: AnNetwork) -> str:
    doc = {"n": net.n, "vertices": [format_perm(p) for p in net.labels],
           "edges": [[u, v] for u, v in net.graph.edges()]}
    return json.dumps(doc, separators=(",", ":")) + "\n"


# -- helpers ----------------------------------------------------------------------

def _network(n: int) -> AnNetwork:
    try:
        return build_an(n)
    except NetworkError as exc:
        raise UsageError(str(exc)) from None


def _workers(args) -> int:
    return args.workers if getattr(args, "workers", None) else default_workers()


def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "json")}
    cfg.update(backend=kernels.BACKEND, bitrow_threshold=BITROW_THRESHOLD, max_dimension=MAX_DIMENSION)
    cfg.update(extra)
    return cfg


def _print_kappa(label: str, res: KappaResult | None, k_max: int) -> None:
    if res is None:
        print(f"{label:<12} no qualifying set with |F| <= {k_max}")
        return
    w = res.witness
    print(f"{label:<12} value={res.value}  nodes={res.nodes_explored}  time={res.elapsed:.2f}s")
    print(f"{'':<12} faulty={sorted(w.faulty_set)}")
    if w.labels:
        print(f"{'':<12} labels={list(w.labels)}")
    print(f"{'':<12} components={w.component_sizes} shapes={list(w.shapes)} satisfied={w.satisfied}")


CLAIMED = {2: lambda n: n - 1, 3: lambda n: 2 * n - 3, 4: lambda n: 3 * n - 6}


def _exhaustive_cost(nv: int, k_max: int) -> int:
    return sum(comb(nv, k) for k in range(1, min(k_max, nv) + 1))


def _run_engines(g: TopologyGraph, ell: int, k_max: int, engine: str, workers: int,
                 long_running: bool, n: int | None, labels, ledger: Ledger, announce=print):
    engines = ("exhaustive", "fragment") if engine == "both" else (engine,)
    if "exhaustive" in engines:
        cost = _exhaustive_cost(g.vertex_count, k_max)
        if cost > LONG_RUNNING_SUBSETS and not long_running:
            raise UsageError(f"exhaustive search may enumerate up to {cost:,} subsets; "
                             "re-run with --long-running")
        if cost > LONG_RUNNING_SUBSETS:
            announce(f"estimated cost: up to {cost:,} subsets")
    if "fragment" in engines and g.vertex_count > kernels.WORD and not long_running:
        raise UsageError(f"fragment search on {g.vertex_count} vertices runs on pure-Python kernels; "
                         "re-run with --long-running")
    results = {}
    for name in engines:
        fn = kappa_ell_exhaustive if name == "exhaustive" else kappa_ell_fragment_search
        res = fn(g, ell, k_max, workers=workers)
        if res is not None and labels is not None:
            res = replace(res, witness=_relabel(res, g, ell, n, labels))
        results[name] = res
        _print_kappa(name, res, k_max)
        payload = res.to_dict(ledger.zero) if res is not None else {"value": None, "k_max": k_max}
        ledger.add(f"kappa[{name}]", "kappa", payload, res.elapsed if res else 0.0)
    return results


def _relabel(res: KappaResult, g, ell, n, labels):
    cert = verify_cut(g, res.witness.faulty_set, ell, n=n, labels=labels, method=res.method)
    return replace(cert, elapsed_ms=res.witness.elapsed_ms)


# -- subcommands ----------------------------------------------------------------

def cmd_gen(args, ledger: Ledger) -> int:
    start = time.perf_counter()
    net = _network(args.n)
    g = net.graph
    degs = sorted(set(g.degrees().tolist()))
    stats = {"n": net.n, "vertices": g.vertex_count, "edges": g.edge_count, "degrees": degs,
             "regular": len(degs) == 1}
    print(f"AN_{net.n}: {g.vertex_count} vertices, {g.edge_count} edges, "
          + (f"{degs[0]}-regular" if len(degs) == 1 else f"degrees {degs}"))
    if args.stats:
        if g.vertex_count <= ALL_PAIRS_LIMIT:
            stats["diameter"] = all_pairs_diameter(g)
            stats["diameter_method"] = "all-pairs"
        else:
            stats["diameter"] = eccentricity(g, 0)
            stats["diameter_method"] = "eccentricity of vertex 0 (vertex-transitive)"
        part = subnet_partition(net) if net.n >= 4 else None
        print(f"diameter {stats['diameter']} ({stats['diameter_method']})")
        if part is not None:
            sizes = sorted(set(part.class_sizes.values()))
            cross = sorted(set(part.external_counts.values()))
            stats.update(class_sizes=sizes, cross_edges_per_pair=cross)
            print(f"classes: {net.n} x {sizes} vertices; external edges per class pair: {cross}")
    if args.export_dot:
        Path(args.export_dot).write_text(export_dot(g, net.labels, f"AN_{net.n}"))
    if args.export_edges:
        Path(args.export_edges).write_text(format_edge_list(g))
    ledger.add("gen", "stats", stats, time.perf_counter() - start)
    return 0


def cmd_kappa(args, ledger: Ledger) -> int:
    net = _network(args.n)
    k_max = args.kmax if args.kmax is not None else default_k_max(net.n)
    if args.ell < 2:
        raise UsageError("--ell must be >= 2")
    results = _run_engines(net.graph, args.ell, k_max, args.engine, _workers(args), args.long_running,
                           net.n, net.labels, ledger)
    values = {name: (r.value if r else None) for name, r in results.items()}
    status = 0
    if len(set(values.values())) > 1:
        print(f"engines disagree: {values}")
        status = 1
    claim = CLAIMED.get(args.ell)
    found = next(iter(values.values()))
    if claim and args.n >= 4 and found is not None:
        expected = claim(args.n)
        ok = found == expected
        print(f"claimed kappa_{args.ell}(AN_{args.n}) = {expected}: {'confirmed' if ok else 'VIOLATED'}")
        status = status or (0 if ok else 1)
    return status


def cmd_cut(args, ledger: Ledger) -> int:
    start = time.perf_counter()
    net = _network(args.n)
    ids = [int(x) for x in args.at.split(",")] if args.at else []
    try:
        if args.kind == "vertex":
            v = ids[0] if ids else 0
            f, ell, extra = cut_vertex_neighborhood(net, v), 2, {"vertex": v}
        elif args.kind == "edge":
            u, v = ids if len(ids) == 2 else (0, net.graph.adjacency[0][0])
            f, ell, extra = cut_edge_neighborhood(net, u, v), 2, {"edge": [u, v]}
        else:
            f, cycle = cut_six_cycle(net)
            ell, extra = 4, {"cycle": list(cycle)}
    except (VerifyError, IndexError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    cert = certify(net, f, args.ell or ell, method=f"cut:{args.kind}")
    print(f"{args.kind} cut on AN_{net.n}: |F| = {len(f)}  {extra}")
    print(f"faulty={sorted(f)}")
    print(f"components={cert.component_sizes} shapes={list(cert.shapes)}")
    print(f"satisfied for ell={cert.ell}: {cert.satisfied}")
    payload = cert.to_dict() | extra
    ledger.add(f"cut[{args.kind}]", "cut", _zero_elapsed(payload) if ledger.zero else payload,
               time.perf_counter() - start)
    return 0 if cert.satisfied else 1


def _suite_plan(n: int, suite: str, lemma: str, long_running: bool) -> list[tuple[str, object]]:
    plan: list[tuple[str, object]] = []
    want = (lambda name: lemma in ("all", name))
    if want("basic"):
        plan.append(("basic", "run" if n >= 4 else "needs n >= 4"))
    if want("subgraph"):
        if n < 6:
            plan.append(("subgraph", "needs n >= 6"))
        elif n > 6 and not (suite == "full" and long_running):
            plan.append(("subgraph", "n > 6 needs --suite full --long-running"))
        else:
            plan.append(("subgraph", "run"))
    if want("small-cuts"):
        if n == 4:
            plan.append(("lemma5", 4))
        elif n == 5:
            plan += [("lemma3", 5), ("lemma4", 5), ("lemma5", 6)]
            if suite == "full" and long_running:
                plan.append(("corollary", 8))
            else:
                plan.append(("corollary", 6))
        else:
            plan.append(("small-cuts", "exhaustive audits need n in {4, 5}"))
    if want("super"):
        plan.append(("super", "run" if n >= 4 else "needs n >= 4"))
    if want("theorem"):
        plan.append(("theorem", "run" if n >= 4 else "needs n >= 4"))
    return plan


def cmd_verify(args, ledger: Ledger) -> int:
    net = _network(args.n)
    workers = _workers(args)
    reports: list[LemmaReport] = []
    print(f"verification suite '{args.suite}' on AN_{net.n} (workers={workers}, backend={kernels.BACKEND})")
    for name, step in _suite_plan(net.n, args.suite, args.lemma, args.long_running):
        if isinstance(step, str) and step != "run":
            print(f"  {name:<10} skipped: {step}")
            ledger.add(name, "lemma", {"lemma": name, "n": net.n, "skipped": step})
            continue
        start = time.perf_counter()
        if name == "basic":
            rep = verify_basic_lemma(net)
        elif name == "subgraph":
            rep = verify_subgraph_neighborhood_bounds(net)
        elif name == "super":
            rep = verify_super_connectivity(net, workers=workers)
        elif name == "theorem":
            rep = verify_component_theorem(net, workers=workers)
        else:
            if step > 6:
                print(f"  {name:<10} estimated cost: {subsets_up_to(net.vertex_count, step):,} subsets")
            rep = verify_small_cut_structure(net, step, name, workers=workers, long_running=args.long_running)
        elapsed = time.perf_counter() - start
        reports.append(rep)
        verdict = "PASS" if rep.passed else "FAIL"
        print(f"  {name:<10} {verdict}  checked={rep.instances_checked:,}  violations={len(rep.violations)}"
              f"  ({elapsed:.2f}s)")
        for v in rep.violations[:5]:
            print(f"      violation: {v}")
        doc = rep.to_dict()
        ledger.add(name, "lemma", _zero_elapsed(doc) if ledger.zero else doc, elapsed)
    failed = [r.lemma_id for r in reports if not r.passed]
    print("all checked claims passed" if not failed else f"claims violated: {failed}")
    return 1 if failed else 0


def cmd_solve(args, ledger: Ledger) -> int:
    try:
        g = read_edge_list(args.edges)
    except (OSError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    if args.ell < 2:
        raise UsageError("--ell must be >= 2")
    k_max = args.kmax if args.kmax is not None else g.vertex_count
    print(f"graph {args.edges}: {g.vertex_count} vertices, {g.edge_count} edges")
    try:
        results = _run_engines(g, args.ell, k_max, args.engine, _workers(args), args.long_running,
                               None, None, ledger)
    except ConnectivityError as exc:
        raise UsageError(str(exc)) from None
    values = {name: (r.value if r else None) for name, r in results.items()}
    if len(set(values.values())) > 1:
        print(f"engines disagree: {values}")
        return 1
    return 0


def cmd_export(args, ledger: Ledger) -> int:
    net = _network(args.n)
    if args.format == "dot":
        sys.stdout.write(export_dot(net.graph, net.labels, f"AN_{net.n}"))
    elif args.format == "edges":
        sys.stdout.write(format_edge_list(net.graph))
    else:
        sys.stdout.write(export_json(net))
    return 0


def cmd_connectivity(args, ledger: Ledger) -> int:
    net = _network(args.n)
    res = vertex_connectivity(net.graph)
    print(f"kappa(AN_{net.n}) = {res.value} via {res.method} ({res.nodes_explored} pair flows, {res.elapsed:.2f}s)")
    print(f"separating set {sorted(res.witness.faulty_set)} -> components {res.witness.component_sizes}")
    ledger.add("connectivity", "kappa", res.to_dict(ledger.zero), res.elapsed)
    ok = res.value == net.n - 1 or net.n == 3
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the run ledger as JSON")
    common.add_argument("--zero-timings", action="store_true",
                        help="record all timings as 0 so repeated ledgers compare byte-for-byte")

    parser = argparse.ArgumentParser(prog="an", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"annet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="build AN_n and print its statistics")
    p.add_argument("n", type=int)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--export-dot", metavar="PATH")
    p.add_argument("--export-edges", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("kappa", parents=[common], help="exact ell-component connectivity of AN_n")
    p.add_argument("n", type=int)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--engine", choices=("exhaustive", "fragment", "both"), default="fragment")
    p.add_argument("--kmax", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--long-running", action="store_true")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("cut", parents=[common], help="build and certify a constructive cut")
    p.add_argument("n", type=int)
    p.add_argument("--kind", choices=("vertex", "edge", "six-cycle"), required=True)
    p.add_argument("--at", metavar="IDS", help="vertex id, or 'u,v' for an edge")
    p.add_argument("--ell", type=int, help="component target for the certificate")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("verify", parents=[common], help="run the lemma audits")
    p.add_argument("n", type=int)
    p.add_argument("--suite", choices=("default", "full"), default="default")
    p.add_argument("--lemma", choices=("basic", "subgraph", "small-cuts", "super", "theorem", "all"),
                   default="all")
    p.add_argument("--long-running", action="store_true")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="kappa_ell of a graph given as an edge list")
    p.add_argument("--edges", required=True, metavar="PATH")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--kmax", type=int)
    p.add_argument("--engine", choices=("exhaustive", "fragment", "both"), default="fragment")
    p.add_argument("--workers", type=int)
    p.add_argument("--long-running", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export", parents=[common], help="write AN_n to stdout")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("dot", "edges", "json"), required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("connectivity", parents=[common], help="classical connectivity of AN_n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_connectivity)
    return parser


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ledger = Ledger(argv, _config(args, workers=_workers(args) if hasattr(args, "workers") else None),
                    args.zero_timings)
    try:
        status = args.func(args, ledger)
    except UsageError as exc:
        print(f"an: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    ledger.write(args.json)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
