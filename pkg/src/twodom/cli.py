"""Command line interface: ``twodom <subcommand> ...``.

Exit status is 0 on success, 1 on bad input (unreadable or malformed
files, unmet preconditions, unknown flags) and 2 when an exact solver runs
out of its node budget.  Graph arguments name an edge-list file, or ``-``
for standard input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import domination as D
from .errors import BudgetError, GenerationError, GraphError
from .family import FamilyParams, closed_a, closed_gamma2, closed_gap, generate
from .graph import Graph, is_connected
from .invariants import annihilation, conjecture_check, gamma2
from .io import parse_edge_list, write_dot, write_edge_list
from .reductions import reduce_trace, verify_step
from .scan import CLASSES, ScanSpec, reverify, scan
from .structure import cycle_reports, is_cactus, theorem5_hypotheses

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _load(path: str) -> Graph:
    if path == "-":
        return parse_edge_list(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _cmd_gamma2(args) -> str:
    g = _load(args.graph)
    backends = {
        "auto": lambda: gamma2(g, args.budget),
        D.BRUTEFORCE: lambda: D.gamma2_bruteforce(g),
        D.BRANCH_AND_BOUND: lambda: D.gamma2_branch_and_bound(g, args.budget),
        D.CACTUS_DP: lambda: D.gamma2_cactus(g),
    }
    cert = backends[args.backend]()
    if args.format == "text":
        return f"gamma2 {cert.gamma2} backend {cert.backend}\nwitness {' '.join(map(str, sorted(cert.witness)))}"
    return _dump(cert.as_dict())


def _cmd_annihilation(args) -> str:
    cert = annihilation(_load(args.graph))
    if args.format == "text":
        return (f"a {cert.a} degree_sum {cert.degree_sum} d_star {cert.d_star}\n"
                f"canonical_set {' '.join(map(str, sorted(cert.canonical_set)))}")
    return _dump(cert.as_dict())


def _cmd_check(args) -> str:
    rec = conjecture_check(_load(args.graph), args.budget)
    if args.format == "text":
        verdict = "holds" if rec.holds else "VIOLATED"
        return f"gamma2 {rec.gamma2} a {rec.a} gap {rec.gap} {verdict} ({rec.backend})"
    return _dump(rec.as_dict())


def _cmd_gen_family(args) -> str:
    p = FamilyParams(args.t, tuple(args.ks))
    g = generate(p)
    if args.format == "dot":
        return write_dot(g, name="family").rstrip("\n")
    if args.format == "json":
        return _dump({
            "label": p.label(), "t": p.t, "ks": list(p.ks), "n": g.n, "m": g.m,
            "a": closed_a(p), "gamma2": closed_gamma2(p), "gap": closed_gap(p),
            "edges": [list(e) for e in g.edges()],
        })
    return write_edge_list(g).rstrip("\n")


def _cmd_reduce(args) -> str:
    g = _load(args.graph)
    trace = reduce_trace(g, descend_base_cases=not args.stop_at_base)
    checks = []
    if args.verify:
        cur = trace.initial
        for step in trace.steps:
            checks.append(verify_step(cur, step, node_budget=args.budget))
            cur = step.result
    if args.format == "json":
        out = trace.as_dict()
        if args.verify:
            out["verification"] = [c.as_dict() for c in checks]
        return json.dumps(out, sort_keys=True)
    text = trace.to_text().rstrip("\n")
    if args.verify:
        bad = [i for i, c in enumerate(checks) if c.ok is False]
        text += f"\nverified {len(checks)} steps, failures {bad or 'none'}"
    return text


def _parse_inject(spec: str) -> FamilyParams:
    # "t:k1,k2,...,kt"
    try:
        t, ks = spec.split(":")
        return FamilyParams(int(t), tuple(int(k) for k in ks.split(",")))
    except ValueError as exc:
        raise GraphError(f"bad --inject value {spec!r}: {exc}") from None


def _cmd_scan(args) -> str:
    try:
        spec = ScanSpec(
            args.cls, n_min=args.n_min, n_max=args.n_max, count=args.count,
            seed=args.seed, solver_budget=args.budget, cycle_bias=args.cycle_bias,
            inject_family=tuple(_parse_inject(s) for s in args.inject),
        )
    except ValueError as exc:
        raise GraphError(str(exc)) from None
    report = scan(spec, workers=args.workers)
    if args.reverify:
        bad = [i for i, ok in reverify(report).items() if not ok]
        if bad:
            raise AssertionError(f"violations failed brute-force re-verification: {bad}")
    if args.format == "csv":
        return report.to_csv(args.timings).rstrip("\n")
    if args.format == "text":
        return report.to_text().rstrip("\n")
    return report.to_json(args.timings).rstrip("\n")


def _cmd_structure(args) -> str:
    g = _load(args.graph)
    hyp = theorem5_hypotheses(g)
    cycles = cycle_reports(g) if is_connected(g) and is_cactus(g) else []
    if args.format == "json":
        return _dump({
            "n": g.n, "m": g.m, "cactus": hyp.cactus,
            "cycles": [
                {"cycle": c.cycle, "length": c.length,
                 "exit_vertices": sorted(c.exit_vertices),
                 "is_outer": c.is_outer, "has_sun": c.has_sun}
                for c in cycles
            ],
            "theorem5": hyp.as_dict(),
        })
    lines = [f"n {g.n} m {g.m} cactus {hyp.cactus}"]
    for c in cycles:
        exits = ",".join(map(str, sorted(c.exit_vertices))) or "-"
        lines.append(f"cycle {' '.join(map(str, c.cycle))} exits {exits} "
                     f"outer {c.is_outer} sun {c.has_sun}")
    lines.extend(f"{k} {v}" for k, v in hyp.as_dict().items())
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twodom", description="2-domination and annihilation number toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help_, formats=("json", "text")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="edge-list file, or - for stdin")
        sp.add_argument("--format", choices=formats, default=formats[0])
        return sp

    sp = graph_cmd("gamma2", "exact 2-domination number")
    sp.add_argument("--backend", default="auto",
                    choices=["auto", D.BRUTEFORCE, D.BRANCH_AND_BOUND, D.CACTUS_DP])
    sp.add_argument("--budget", type=int, default=D.DEFAULT_NODE_BUDGET)
    sp.set_defaults(func=_cmd_gamma2)

    graph_cmd("annihilation", "annihilation number and canonical set").set_defaults(
        func=_cmd_annihilation)

    sp = graph_cmd("check", "compare gamma_2 with a + 1")
    sp.add_argument("--budget", type=int, default=D.DEFAULT_NODE_BUDGET)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("gen-family", help="emit a member G(t; k1..kt) of the counterexample family")
    sp.add_argument("t", type=int)
    sp.add_argument("ks", type=int, nargs="+")
    sp.add_argument("--format", choices=["edges", "dot", "json"], default="edges")
    sp.set_defaults(func=_cmd_gen_family)

    sp = graph_cmd("reduce", "run the reduction engine", formats=("text", "json"))
    sp.add_argument("--verify", action="store_true", help="check every step with exact solvers")
    sp.add_argument("--stop-at-base", action="store_true",
                    help="stop at the first tree or cycle instead of descending to K2")
    sp.add_argument("--budget", type=int, default=D.DEFAULT_NODE_BUDGET)
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("scan", help="search a random graph class for violations")
    sp.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    sp.add_argument("--n-min", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=18)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=D.DEFAULT_NODE_BUDGET)
    sp.add_argument("--cycle-bias", type=float, default=0.4)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--inject", action="append", default=[], metavar="T:K1,...,KT",
                    help="append a family member to the scan (repeatable)")
    sp.add_argument("--reverify", action="store_true",
                    help="re-check violations by brute force (n <= 24)")
    sp.add_argument("--timings", action="store_true", help="include per-instance runtime")
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sp.set_defaults(func=_cmd_scan)

    graph_cmd("structure", "cycle, sun and hypothesis report", formats=("text", "json")).set_defaults(
        func=_cmd_structure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except BudgetError as exc:
        print(f"twodom: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, GenerationError, OSError) as exc:
        print(f"twodom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
