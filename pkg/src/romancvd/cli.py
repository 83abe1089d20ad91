"""Command-line entry point.

Exit codes: 0 success, 1 infeasible under the given budget (or no CVD set
within ``--kmax`` for ``cvd``, or an invalid labeling for ``validate``),
2 usage or input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import BenchConfig, ConfigError, run_bench, summarize, to_csv
from .cvd import find_cvd, verify_cvd
from .generators import gen_cluster_plus_k, hitting_set_to_rd_instance
from .graph import Graph, ParseError, RomanLabeling, parse_graph, parse_vertex_set, validate_irdf, validate_rdf
from .ird import solve_ird
from .oracle import OracleRefused, brute_force_ird, brute_force_rd
from .pipeline import InvariantError
from .rd import solve_rd

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _modulator(g: Graph, args) -> frozenset[int]:
    if args.cvd:
        s = parse_vertex_set(_read(args.cvd), g.n)
        if not verify_cvd(g, s):
            raise UsageError(f"{args.cvd}: not a cluster vertex deletion set of the graph")
        return s
    s = find_cvd(g, args.kmax)
    if s is None:
        raise UsageError(f"no cluster vertex deletion set of size <= {args.kmax}; raise --kmax or pass --cvd")
    return s


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="romancvd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", help="exact RD / IRD via a cluster vertex deletion set")
    sp.add_argument("variant", choices=["rd", "ird"])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--cvd", help="file with the modulator vertices; computed when omitted")
    sp.add_argument("--kmax", type=int, default=16, help="search limit when --cvd is omitted")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("cvd", help="find a minimum cluster vertex deletion set")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--kmax", type=int, required=True)

    sp = sub.add_parser("oracle", help="brute-force reference value")
    sp.add_argument("variant", choices=["rd", "ird"])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--cap", type=int)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="write a generated instance in the edge-list format")
    gsub = sp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    gc = gsub.add_parser("cluster", help="disjoint cliques plus k modulator vertices")
    gc.add_argument("--cliques", type=int, default=0)
    gc.add_argument("--clique-size", type=int, nargs=2, default=(3, 6), metavar=("LO", "HI"))
    gc.add_argument("--clique-vertices", type=int, help="draw cliques until this many vertices exist")
    gc.add_argument("--k", type=int, required=True)
    gc.add_argument("--edge-prob", type=float, default=0.3)
    gc.add_argument("--seed", type=int, required=True)
    gh = gsub.add_parser("hitting-set-reduction", help="split graph from a hitting set instance")
    gh.add_argument("--universe", type=int, required=True)
    gh.add_argument("--sets", required=True, help="one set per line, space-separated element indices")
    for g in (gc, gh):
        g.add_argument("--out", help="edge-list output (default stdout)")
        g.add_argument("--cvd-out", help="also write the planted modulator here")

    sp = sub.add_parser("bench", help="timed solves over a generated corpus")
    sp.add_argument("--config", required=True, help="JSON config file")
    sp.add_argument("--out", help="CSV output (default stdout)")
    sp.add_argument("--plot", help="write a PNG figure here")

    sp = sub.add_parser("validate", help="check a labeling")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--labeling", required=True, help="comma-separated labels, e.g. 0,2,0")
    sp.add_argument("--variant", choices=["rd", "ird"], default="rd")
    return p


def _cmd_solve(args, out) -> int:
    g = _load_graph(args.graph)
    s = _modulator(g, args)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    solve = solve_rd if args.variant == "rd" else solve_ird
    sol = solve(g, s, budget=args.budget, threads=args.threads)
    if args.json:
        out.write(json.dumps(sol.to_dict(), sort_keys=True) + "\n")
    elif not sol.feasible:
        out.write("INFEASIBLE\n")
    else:
        out.write(f"value {sol.value}\nlabeling {sol.labeling}\n"
                  f"s1 {' '.join(map(str, sol.s1))}\ns2 {' '.join(map(str, sol.s2))}\n")
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def _cmd_cvd(args, out) -> int:
    if args.kmax < 0:
        raise UsageError("--kmax must be non-negative")
    s = find_cvd(_load_graph(args.graph), args.kmax)
    if s is None:
        out.write("NONE\n")
        return EXIT_INFEASIBLE
    out.write(" ".join(map(str, sorted(s))) + "\n")
    return EXIT_OK


def _cmd_oracle(args, out) -> int:
    g = _load_graph(args.graph)
    value, labeling = (brute_force_rd if args.variant == "rd" else brute_force_ird)(g, cap=args.cap)
    if args.json:
        out.write(json.dumps({"variant": args.variant, "value": value,
                              "labeling": list(labeling.labels)}, sort_keys=True) + "\n")
    else:
        out.write(f"value {value}\nlabeling {labeling}\n")
    return EXIT_OK


def _read_sets(text: str, universe: int) -> list[list[int]]:
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        try:
            members = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"bad element in {line!r}", lineno) from None
        if any(not 0 <= e < universe for e in members):
            raise ParseError(f"element outside 0..{universe - 1}", lineno)
        sets.append(members)
    return sets


def _cmd_gen(args, out) -> int:
    if args.kind == "cluster":
        lo, hi = args.clique_size
        try:
            g, s = gen_cluster_plus_k(args.cliques, (lo, hi), args.k, args.edge_prob, args.seed,
                                      total_clique_vertices=args.clique_vertices)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        note = [f"cluster seed={args.seed} k={args.k} edge_prob={args.edge_prob}"]
    else:
        family = _read_sets(_read(args.sets), args.universe)
        try:
            red = hitting_set_to_rd_instance(args.universe, family)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        g, s = red.graph, frozenset(red.universe_vertices)
        note = [f"hitting-set reduction universe={args.universe} sets={len(family)}"]
    _write(args.out, g.to_edge_list(note), out)
    if args.cvd_out:
        _write(args.cvd_out, " ".join(map(str, sorted(s))) + "\n", out)
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    cfg = BenchConfig.loads(_read(args.config))
    rows = run_bench(cfg)
    _write(args.out, to_csv(rows), out)
    if args.plot:
        from .plotting import plot_bench
        plot_bench(rows, args.plot)
    # keep stdout pure CSV when it carries the table
    (sys.stderr if args.out in (None, "-") else out).write(summarize(rows) + "\n")
    return EXIT_OK


def _cmd_validate(args, out) -> int:
    g = _load_graph(args.graph)
    f = RomanLabeling.parse(args.labeling)
    if len(f) != g.n:
        raise UsageError(f"labeling has {len(f)} entries, graph has {g.n} vertices")
    ok = (validate_rdf if args.variant == "rd" else validate_irdf)(g, f)
    out.write("VALID\n" if ok else "INVALID\n")
    return EXIT_OK if ok else EXIT_INFEASIBLE


COMMANDS = {"solve": _cmd_solve, "cvd": _cmd_cvd, "oracle": _cmd_oracle, "gen": _cmd_gen,
            "bench": _cmd_bench, "validate": _cmd_validate}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except (ParseError, ConfigError, OracleRefused) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except InvariantError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INVARIANT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
