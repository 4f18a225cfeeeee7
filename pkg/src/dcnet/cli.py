"""The ``dcnet`` command line.

``run(argv)`` returns the exit status: 0 on success, 1 on a domain error
(reported as ``<ErrorClass>: <message>`` on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .dot import export_dot
from .errors import DcnetError
from .hybrid import contract_o1, d_o1, expand_o1
from .matrix import adjacency_matrix, inheritance_matrix
from .metric import (
    ClusterIndex,
    Distance,
    explore_max_distance,
    gen_powerset_network,
    gen_trivial_tree,
    p_norm_distance,
    reference_distance_formula,
)
from .network import (
    align_taxa,
    classify,
    cluster_from_names,
    format_cluster,
    read_network,
    redundant_arcs,
    serialize,
    trivial_clusters,
)
from .search import MAX_NONTRIVIAL, best_fitting_in_class
from .simplify import apply_sequence, canonical_cps, format_step, is_cps, parse_steps, transitive_reduction

VISIBLE_COMMANDS = ("validate", "clusters", "matrix", "dist", "refdist", "gen", "reduce",
                    "simplify", "is-cps", "best-tree", "contract-o1", "expand-o1", "dot")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2, ensure_ascii=False))


def read_cluster_file(path: str | Path, taxa: Sequence[str]) -> list[int]:
    """One cluster per line as whitespace- or comma-separated taxon names; ``#`` starts a comment."""
    clusters = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if line:
            clusters.append(cluster_from_names(line.split(), taxa))
    return clusters


# -- subcommands ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    net = read_network(args.file)
    flags = classify(net)
    if args.format == "json":
        _emit_json({"valid": True, "vertices": len(net), "arcs": len(net.arcs), "classes": flags.as_dict()})
        return 0
    if flags.is_dc:
        kind = "DC"
    else:
        u, v = net.dc_violation
        kind = f"not DC ({net.labels[u]} and {net.labels[v]} share {net.cluster_name(u)})"
    _emit(f"ok: {kind}, {len(net)} vertices, {len(net.arcs)} arcs")
    return 0


def cmd_clusters(args) -> int:
    net = read_network(args.file)
    _emit("\n".join(f"{net.labels[v]}\t{net.cluster_name(v)}" for v in range(len(net))))
    return 0


def cmd_matrix(args) -> int:
    net = read_network(args.file)
    m = adjacency_matrix(net) if args.which == "a" else inheritance_matrix(net)
    m = m.reordered(list(range(len(net))))
    sep = "\t" if args.format == "tsv" else ","
    lines = [sep.join([""] + list(net.labels))]
    for u in range(len(net)):
        lines.append(sep.join([net.labels[u]] + [str(x) for x in m[u]]))
    _emit("\n".join(lines))
    return 0


def _format_distance(d: Distance) -> str:
    if d.p == 1:
        return str(d.radicand)
    return f"{d} ~ {d.value:.6f}"


def cmd_dist(args) -> int:
    a, b = read_network(args.a), read_network(args.b)
    if args.o1:
        d = Distance(d_o1(a, align_taxa(a, b)), 1)
    else:
        index = None
        if args.clusters:
            index = ClusterIndex(a.taxa, tuple(sorted(set(read_cluster_file(args.clusters, a.taxa)))))
        d = p_norm_distance(a, b, args.p, index)
    if args.format == "json":
        _emit_json({"p": d.p, "radicand": str(d.radicand), "exact": str(d), "approx": d.value})
    else:
        _emit(_format_distance(d))
    return 0


def cmd_refdist(args) -> int:
    if args.explore:
        best, ref = explore_max_distance(args.n, args.explore, args.seed)
        _emit(f"closed form: {ref}\nlargest sampled over {args.explore} random pairs: {best}")
    else:
        _emit(str(reference_distance_formula(args.n)))
    return 0


def cmd_gen(args) -> int:
    net = gen_trivial_tree(args.n) if args.kind == "trivial" else gen_powerset_network(args.n)
    text = serialize(net)
    if args.out:
        Path(args.out).write_text(text)
    else:
        _emit(text)
    return 0


def cmd_reduce(args) -> int:
    _emit(serialize(transitive_reduction(read_network(args.file))))
    return 0


def cmd_simplify(args) -> int:
    net = read_network(args.file)
    labels = [s.strip() for s in args.keep.split(",") if s.strip()]
    keep = set(trivial_clusters(net.n)) | {net.clusters[net.vertex(s)] for s in labels}
    _emit(serialize(canonical_cps(net, keep)))
    return 0


def cmd_is_cps(args) -> int:
    base, cand = read_network(args.base), read_network(args.candidate)
    verdict = is_cps(base, cand)
    steps = []
    if verdict.certificate is not None:
        steps = [format_step(s, base) for s in verdict.certificate.steps]
    if args.format == "json":
        _emit_json({"is_cps": verdict.is_cps, "certificate": steps, "reason": verdict.reason})
    elif verdict:
        _emit("yes\ncertificate: " + (" ".join(steps) if steps else "(no steps)"))
    else:
        _emit(f"no: {verdict.reason}")
    return 0


def cmd_best_tree(args) -> int:
    net = read_network(args.file)
    report = best_fitting_in_class(net, args.net_class.replace("-", "_"),
                                   max_nontrivial=args.max_nontrivial, force=args.force)
    if args.format == "json":
        _emit_json(report.to_json())
    elif args.table:
        _emit(report.table())
    else:
        for cand in report.minimizers:
            _emit(f"{report.name(cand)}\t{cand.distance}")
    return 0


def cmd_contract_o1(args) -> int:
    _emit(serialize(contract_o1(read_network(args.file))))
    return 0


def cmd_expand_o1(args) -> int:
    _emit(serialize(expand_o1(read_network(args.file))))
    return 0


def cmd_dot(args) -> int:
    _emit(export_dot(read_network(args.file)))
    return 0


def cmd_debug(args) -> int:
    from .oracle import RandomNetSpec, enumerate_all_cps, gen_random_dc, gen_random_network, gen_random_o1

    if args.what == "random":
        spec = RandomNetSpec(args.n, args.max_internal, args.density, args.seed)
        make = {"dc": gen_random_dc, "any": gen_random_network, "o1": gen_random_o1}[args.kind]
        _emit(serialize(make(spec)))
    elif args.what == "all-cps":
        net = read_network(args.file)
        found = enumerate_all_cps(net, max_vertices=args.max_vertices)
        reduced = [m for m in found.values() if not redundant_arcs(m)]
        _emit(f"{len(found)} CPSs, {len(reduced)} without redundant arcs")
        for m in sorted(reduced, key=lambda m: sorted(m.cluster_set)):
            names = sorted(m.cluster_set - trivial_clusters(m.n))
            _emit("  " + (" ".join(format_cluster(c, m.taxa) for c in names) or "(trivial)"))
    else:
        net = read_network(args.file)
        _emit(serialize(apply_sequence(net, parse_steps(args.steps, net))))
    return 0


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcnet",
        description="Inheritance matrices, distances and cluster-preserving simplification "
                    "of distinct-cluster phylogenetic networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(VISIBLE_COMMANDS) + "}")

    def add(name: str, func, help_text: str | None, files: Sequence[str] = ("file",)):
        p = sub.add_parser(name, help=help_text) if help_text else sub.add_parser(name)
        for f in files:
            p.add_argument(f)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check a .dcn file and report its class")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add("clusters", cmd_clusters, "list each vertex with its cluster")
    p = add("matrix", cmd_matrix, "print the adjacency or inheritance matrix")
    p.add_argument("--which", choices=("a", "h"), default="h")
    p.add_argument("--format", choices=("tsv", "csv"), default="tsv")

    p = add("dist", cmd_dist, "inheritance distance between two networks", files=("a", "b"))
    p.add_argument("--p", type=int, default=1, help="norm exponent (default 1)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--clusters", metavar="FILE", help="fixed cluster index, one cluster per line")
    mode.add_argument("--o1", action="store_true", help="compare extended networks via their contractions")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("refdist", cmd_refdist, "closed-form distance between P(X) and Tr(X)", files=())
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--explore", type=int, metavar="SAMPLES", default=0,
                   help="also sample random pairs and report the largest distance seen")
    p.add_argument("--seed", type=int, default=0)

    p = add("gen", cmd_gen, "generate the trivial tree or the power-set network", files=())
    p.add_argument("kind", choices=("trivial", "powerset"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", metavar="FILE")

    add("reduce", cmd_reduce, "delete every redundant arc")
    p = add("simplify", cmd_simplify, "canonical simplification keeping the given vertices")
    p.add_argument("--keep", required=True, metavar="LABEL,LABEL,...",
                   help="vertices whose clusters are kept; trivial clusters are always kept")
    p = add("is-cps", cmd_is_cps, "decide whether CAND is a simplification of BASE",
            files=("base", "candidate"))
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("best-tree", cmd_best_tree, "best-fitting simplification in a network class")
    p.add_argument("--class", dest="net_class", choices=("tree", "tree-child", "normal", "any"), default="tree")
    p.add_argument("--max-nontrivial", type=int, metavar="K")
    p.add_argument("--force", action="store_true",
                   help=f"search even with more than {MAX_NONTRIVIAL} nontrivial clusters")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--table", action="store_true", help="list every candidate")
    out.add_argument("--format", choices=("text", "json"), default="text")

    add("contract-o1", cmd_contract_o1, "merge each out-degree-1 hybrid into its child")
    add("expand-o1", cmd_expand_o1, "give every hybrid a fresh out-degree-1 parent")
    add("dot", cmd_dot, "Graphviz rendering")

    debug = add("debug", cmd_debug, None, files=())
    dsub = debug.add_subparsers(dest="what", required=True)
    r = dsub.add_parser("random")
    r.add_argument("--kind", choices=("dc", "any", "o1"), default="dc")
    r.add_argument("--n", type=int, default=4)
    r.add_argument("--max-internal", type=int, default=4)
    r.add_argument("--density", type=float, default=0.4)
    r.add_argument("--seed", type=int, default=0)
    r = dsub.add_parser("all-cps")
    r.add_argument("file")
    r.add_argument("--max-vertices", type=int, default=8)
    r = dsub.add_parser("apply")
    r.add_argument("file")
    r.add_argument("--steps", required=True, help="steps in application order, e.g. 'D(9,3) D(6)'")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "o1", False) and args.p != 1:
        parser.print_usage(sys.stderr)
        print("dcnet: error: --o1 only supports --p 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except DcnetError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
