"""Command-line front end.

Exit status: 0 for a definite result, 2 for an inconclusive one (subset
budget exhausted, or an ``unknown`` subclass verdict), 1 for usage and
input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .control import DEFAULT_TOL, NumericalAmbiguityError, check_strong_structural, lmin_graph, lmin_matrix
from .forcing import BudgetExhausted, derived_set, is_zfs, zero_forcing_number, zfs_of_size
from .graphs import (
    Digraph,
    GraphError,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_path,
    gen_random_digraph,
    gen_random_ditree,
    lift_undirected,
    parse_edge_list,
    to_edge_list,
)
from .pathcover import leaders_from_cover, minimal_path_cover
from .qualitative import SubclassSpec, matrix_from_json

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2

SUBCLASSES = {
    "full": SubclassSpec("full"),
    "sym": SubclassSpec("symmetric"),
    "symsign+": SubclassSpec("symmetric_same_sign", 1),
    "symsign-": SubclassSpec("symmetric_same_sign", -1),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    samples: int = 200
    subset_budget: int | None = None
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        if self.tolerance <= 0:
            raise UsageError("--tol must be > 0")


def _default_seed() -> int:
    raw = os.environ.get("ZFORCE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ZFORCE_SEED is not an integer: {raw!r}") from None


def _load_graph(path: str, undirected: bool) -> Digraph:
    text = Path(path).read_text()
    graph = parse_edge_list(text, directed=not undirected)
    return lift_undirected(graph) if undirected else graph


def _fmt_set(vs) -> str:
    return "{" + ", ".join(str(v) for v in sorted(vs)) + "}"


def _fmt_forces(forces) -> str:
    return ", ".join(f"{u} -> {v}" for u, v in forces) or "(none)"


def cmd_derive(args, cfg):
    G = _load_graph(args.graph, args.undirected)
    black, chronicle = derived_set(G, args.colors)
    zfs = len(black) == G.n
    report = {"colors": sorted(set(args.colors)), "derived": sorted(black),
              "forces": [list(f) for f in chronicle], "zfs": zfs}
    text = f"derived: {_fmt_set(black)}\nforces: {_fmt_forces(chronicle)}\nzfs: {str(zfs).lower()}"
    return report, text, EXIT_OK


def cmd_zfn(args, cfg):
    G = _load_graph(args.graph, args.undirected)
    if args.size is not None:
        found = zfs_of_size(G, args.size)
        report = {"size": args.size, "zfs": [sorted(s) for s in found], "count": len(found)}
        msg = (f"no {args.size}-subset is a ZFS" if not found
               else f"{len(found)} {args.size}-subsets are ZFS")
        report["message"] = msg
        return report, msg, EXIT_OK
    try:
        res = zero_forcing_number(G, cfg.subset_budget)
    except BudgetExhausted as exc:
        report = {"status": "inconclusive", "lower_bound": exc.lower_bound,
                  "subsets_examined": exc.subsets_examined}
        return report, f"inconclusive: Z(G) >= {exc.lower_bound}", EXIT_INCONCLUSIVE
    report = {"status": "ok", "zfn": res.zfn, "witness": sorted(res.witness),
              "subsets_examined": res.subsets_examined}
    return report, f"Z(G) = {res.zfn}\nwitness: {_fmt_set(res.witness)}", EXIT_OK


def cmd_check(args, cfg):
    G = _load_graph(args.graph, args.undirected)
    verdict = check_strong_structural(G, args.leaders, cfg.samples, cfg.seed,
                                      SUBCLASSES[args.subclass], cfg.tolerance)
    report = verdict.to_json()
    lines = [f"controllable: {str(verdict.controllable).lower()}",
             f"leaders: {_fmt_set(verdict.leaders)}", f"seed: {cfg.seed}"]
    if verdict.chronicle is not None:
        lines.append(f"forces: {_fmt_forces(verdict.chronicle)}")
        lines.append(f"numeric: {verdict.numeric_passes}/{verdict.samples_checked} controllable")
    if verdict.witness is not None:
        lines.append("z: " + " ".join(str(int(v)) for v in verdict.witness[1]))
    lines.extend(verdict.diagnostics)
    code = EXIT_INCONCLUSIVE if verdict.controllable == "unknown" else EXIT_OK
    return report, "\n".join(lines), code


def cmd_lmin(args, cfg):
    method = "exact" if args.exact else "numeric"
    if args.matrix:
        X = matrix_from_json(json.loads(Path(args.matrix).read_text()))
        k, leaders = lmin_matrix(X, cfg.tolerance, method)
        source = "matrix"
    elif args.graph is None:
        raise UsageError("lmin needs a graph file or --matrix")
    else:
        G = _load_graph(args.graph, args.undirected)
        if args.laplacian:
            k, leaders = lmin_matrix(-G.laplacian(), cfg.tolerance, method)
            source = "laplacian"
        else:
            try:
                k, leaders = lmin_graph(G, cfg.subset_budget)
            except BudgetExhausted as exc:
                report = {"status": "inconclusive", "lower_bound": exc.lower_bound}
                return report, f"inconclusive: lmin >= {exc.lower_bound}", EXIT_INCONCLUSIVE
            source = "graph"
    report = {"status": "ok", "source": source, "lmin": k, "leaders": sorted(leaders)}
    return report, f"lmin = {k}\nleaders: {_fmt_set(leaders)}", EXIT_OK


def cmd_pathcover(args, cfg):
    G = _load_graph(args.graph, args.undirected)
    cover = minimal_path_cover(G)
    leaders = leaders_from_cover(cover)
    report = {"paths": cover.to_json(), "path_cover_number": len(cover),
              "leaders": sorted(leaders), "leaders_zfs": is_zfs(G, leaders)}
    text = "\n".join(" -> ".join(map(str, p)) for p in cover.paths)
    return report, f"P(T) = {len(cover)}\n{text}\nleaders: {_fmt_set(leaders)}", EXIT_OK


def cmd_gen(args, cfg):
    family, n = args.family, args.n
    if family == "path":
        graph = gen_path(n)
    elif family == "cycle":
        graph = gen_cycle(n)
    elif family == "complete":
        graph = gen_complete(n)
    elif family == "circulant":
        if not args.offsets:
            raise UsageError("circulant needs --offsets")
        graph = gen_circulant(n, [int(s) for s in args.offsets.split(",")])
    elif family == "random":
        graph = gen_random_digraph(n, args.p, cfg.seed)
    elif family == "ditree":
        graph = gen_random_ditree(n, cfg.seed, args.orientation)
    else:
        raise UsageError(f"unknown family {family!r}")
    if not isinstance(graph, Digraph) and not args.undirected:
        graph = lift_undirected(graph)
    header = f"# {family} n={n}"
    if family in ("random", "ditree"):
        header += f" seed={cfg.seed}"
    # Edge-list text is the output in both formats.
    text = header + "\n" + to_edge_list(graph)
    return None, text, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="default: $ZFORCE_SEED or 0")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--budget", type=int, default=None, help="max subsets examined")
    orient = common.add_mutually_exclusive_group()
    orient.add_argument("--directed", dest="undirected", action="store_false")
    orient.add_argument("--undirected", dest="undirected", action="store_true",
                        help="read edges once each and lift to a symmetric digraph")
    common.set_defaults(undirected=False)

    parser = _Parser(prog="zforcing", description="Zero forcing sets and strong structural controllability.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("derive", parents=[common], help="derived set of a coloring")
    p.add_argument("graph")
    p.add_argument("colors", type=int, nargs="+")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("zfn", parents=[common], help="zero forcing number")
    p.add_argument("graph")
    p.add_argument("--size", type=int, help="only scan subsets of this size")
    p.set_defaults(func=cmd_zfn)

    p = sub.add_parser("check", parents=[common], help="strong structural controllability of a leader set")
    p.add_argument("graph")
    p.add_argument("--leaders", type=int, nargs="+", required=True)
    p.add_argument("--subclass", choices=sorted(SUBCLASSES), default="full")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lmin", parents=[common], help="minimum number of leaders")
    p.add_argument("graph", nargs="?")
    p.add_argument("--matrix", help="JSON matrix file {\"n\": .., \"rows\": [[..]]}")
    p.add_argument("--laplacian", action="store_true", help="use -L of the graph")
    p.add_argument("--exact", action="store_true", help="rational rank instead of PBH/Kalman")
    p.set_defaults(func=cmd_lmin)

    p = sub.add_parser("pathcover", parents=[common], help="minimal path cover of a ditree")
    p.add_argument("graph")
    p.set_defaults(func=cmd_pathcover)

    p = sub.add_parser("gen", parents=[common], help="write a graph in edge-list format")
    p.add_argument("family", choices=("path", "cycle", "complete", "circulant", "random", "ditree"))
    p.add_argument("n", type=int)
    p.add_argument("--offsets", help="comma-separated circulant offsets, e.g. 1,2,3")
    p.add_argument("--p", type=float, default=0.3, help="arc probability for random digraphs")
    p.add_argument("--orientation", choices=("any", "out"), default="any")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        cfg = RunConfig(seed, args.tol, args.samples, args.budget, args.output, args.format)
        report, text, code = args.func(args, cfg)
    except NumericalAmbiguityError as exc:
        print(f"zforcing: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (UsageError, GraphError, ValueError, OSError) as exc:
        print(f"zforcing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None and cfg.format == "json":
        out = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if cfg.output:
        Path(cfg.output).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
