"""Command-line entry point: ``cohomorder construct|verify|graph|demo``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exhaustion.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cohom import find_cohomomorphism
from .derivation import dyadic_approach, xif_derivation
from .demos import demo_antichain, demo_counterexample
from .errors import BudgetExhausted, CapExceeded, InvariantViolation
from .graphs import DEFAULT_BUDGET, empty_graph, maximum_independent_set, strong_product, to_graph6, to_json
from .lp import fractional_clique_cover
from .pipeline import PipelineConfig, embed_preorder, verify_report
from .rational import fmt, parse_rational
from .spectral import materialize, parse_expr, uses_generator
from .words import FinitePreorder

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _config(args) -> PipelineConfig:
    kw = {}
    if args.interval:
        kw["interval"] = tuple(parse_rational(x) for x in args.interval)
    if args.seeds:
        kw["seeds"] = tuple(parse_rational(x) for x in args.seeds)
    for flag, key in (
        ("depth", "depth_cap"),
        ("cap", "materialize_cap"),
        ("budget", "budget"),
        ("element_cap", "element_cap"),
        ("width", "word_width"),
    ):
        if getattr(args, flag) is not None:
            kw[key] = getattr(args, flag)
    kw["generator"] = args.generator
    kw["confirm_negative"] = args.confirm_negative
    return PipelineConfig(**kw)


def _graph(text: str, args):
    gen_expr = parse_expr(args.generator)
    if uses_generator(gen_expr):
        raise InputError("the generator expression cannot mention g")
    gen = materialize(gen_expr, empty_graph(0), args.cap)
    return materialize(parse_expr(text), gen, args.cap)


# ---------------------------------------------------------------- commands

def cmd_construct(args) -> int:
    preorder = FinitePreorder.from_json_obj(_read_json(args.preorder))
    cfg = _config(args)
    report = embed_preorder(preorder, cfg)
    _emit(report.to_json(), args.out)
    pos, neg = report.counts()
    label = report.to_json_obj()["summary"]["spectral_model"]
    print(
        f"{len(preorder)} elements, {pos} positive / {neg} negative certificates, "
        f"{len(report.table)} table words, spectral model {label}",
        file=sys.stderr,
    )
    if args.export_graphs:
        _export_family_graphs(report, cfg, Path(args.export_graphs))
    return EXIT_OK


def _export_family_graphs(report, cfg, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    gen = cfg.generator_graph()
    for i, (name, expr) in enumerate(report.family_exprs.items()):
        try:
            g = materialize(expr, gen, cfg.materialize_cap)
        except CapExceeded as exc:
            print(f"skipping {name}: {exc}", file=sys.stderr)
            continue
        (outdir / f"element{i}.g6").write_text(to_graph6(g) + "\n")


def cmd_verify(args) -> int:
    obj = _read_json(args.report)
    if not isinstance(obj, dict):
        raise InputError("report must be a JSON object")
    res = verify_report(obj)
    if args.json:
        _emit(json.dumps(res.to_json_obj(), indent=2), args.out)
    for f in res.failures:
        where = f["where"]
        where = " -> ".join(where) if isinstance(where, list) else where
        print(f"FAIL {where}: {f['message']}")
    checked = ", ".join(f"{k}={v}" for k, v in res.checked.items())
    print(("ok" if res.ok else f"{len(res.failures)} failure(s)") + (f" ({checked})" if checked else ""))
    return EXIT_OK if res.ok else EXIT_VERIFY


def cmd_graph(args) -> int:
    sub = args.graph_cmd
    if sub == "product":
        graphs = [_graph(t, args) for t in args.exprs]
        g = graphs[0]
        for h in graphs[1:]:
            if g.n * h.n > args.cap:
                raise CapExceeded(f"product needs {g.n * h.n} vertices, cap is {args.cap}")
            g = strong_product(g, h)
        _emit(to_json(g) if args.format == "json" else to_graph6(g), args.out)
    elif sub == "alpha":
        g = _graph(args.expr, args)
        best = maximum_independent_set(g, args.budget)
        print(len(best))
        if args.witness:
            print(" ".join(map(str, best)))
    elif sub == "cliquecover":
        g = _graph(args.expr, args)
        sol = fractional_clique_cover(g)
        print(fmt(sol.value))
        if args.json:
            _emit(json.dumps(sol.to_json_obj(), indent=2), args.out)
    elif sub == "cohom":
        g, h = _graph(args.source, args), _graph(args.target, args)
        m = find_cohomomorphism(g, h, args.budget)
        if m is None:
            print("none")
        else:
            print(" ".join(map(str, m.assignment)))
            if args.out:
                _emit(json.dumps(m.to_json_obj(), indent=2), args.out)
    elif sub == "export":
        g = _graph(args.expr, args)
        _emit(to_json(g) if args.format == "json" else to_graph6(g), args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    name = args.demo
    if name == "counterexample":
        rep = demo_counterexample()
        human, obj, ok = rep.render(), rep.to_json_obj(), rep.ok
    elif name == "antichain":
        rep = demo_antichain(args.n)
        human, obj, ok = rep.render(), rep.to_json_obj(), rep.ok
    elif name == "xif":
        tree = xif_derivation(args.p, args.q)
        human, obj, ok = tree.render(), tree.to_json_obj(), True
    else:
        n, qq = dyadic_approach(args.p, args.q, parse_rational(args.eps))
        human = f"({n}, {qq})"
        obj = {"p": args.p, "q": args.q, "eps": fmt(parse_rational(args.eps)), "n": n, "q_prime": qq,
               "approximation": fmt(parse_rational(f"{1 << n}/{qq}"))}
        ok = True
    print(json.dumps(obj, indent=2) if args.json else human)
    if args.out:
        _emit(json.dumps(obj, indent=2), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--interval", nargs=2, metavar=("S", "T"), help="spectral interval endpoints")
    p.add_argument("--seeds", nargs=3, metavar=("A", "B", "R"), help="root line a*x + b and witness r")
    p.add_argument("--depth", type=int, help="maximum word length (depth cap)")
    p.add_argument("--cap", type=int, help="materialization cap in vertices")
    p.add_argument("--budget", type=int, help="search node budget")
    p.add_argument("--element-cap", type=int, help="maximum number of preorder elements")
    p.add_argument("--width", type=int, help="word width for element codes (default: fewest bits)")
    p.add_argument("--generator", default="F(5/2)", help="generator expression, default F(5/2)")
    p.add_argument("--confirm-negative", action="store_true", help="confirm negatives by search on tiny instances")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohomorder", description=__doc__.splitlines()[0])
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("construct", help="embed a finite preorder and write the certificate report")
    p.add_argument("preorder", help='JSON file {"elements": [...], "leq": [[x, y], ...]} or -')
    p.add_argument("--out", help="report path (default stdout)")
    p.add_argument("--export-graphs", metavar="DIR", help="write graph6 files for element graphs within the cap")
    _add_config_flags(p)
    p.set_defaults(func=cmd_construct)

    p = cmds.add_parser("verify", help="re-check every certificate of a report")
    p.add_argument("report")
    p.add_argument("--json", action="store_true", help="also print the result as JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = cmds.add_parser("graph", help="graph utilities on expressions like 'F(5/2)^2'")
    gsub = p.add_subparsers(dest="graph_cmd", required=True)

    def graph_parser(name, help_):
        q = gsub.add_parser(name, help=help_)
        q.add_argument("--generator", default="F(5/2)", help="graph substituted for g")
        q.add_argument("--cap", type=int, default=5000)
        q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        q.add_argument("--out")
        return q

    q = graph_parser("product", "strong product of several expressions")
    q.add_argument("exprs", nargs="+")
    q.add_argument("--format", choices=("graph6", "json"), default="graph6")
    q = graph_parser("alpha", "independence number")
    q.add_argument("expr")
    q.add_argument("--witness", action="store_true", help="also print a maximum independent set")
    q = graph_parser("cliquecover", "fractional clique cover number")
    q.add_argument("expr")
    q.add_argument("--json", action="store_true", help="print the optimal clique weights")
    q = graph_parser("cohom", "find a cohomomorphism or print none")
    q.add_argument("source")
    q.add_argument("target")
    q = graph_parser("export", "materialize an expression")
    q.add_argument("expr")
    q.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_graph)

    p = cmds.add_parser("demo", help="built-in constructions")
    dsub = p.add_subparsers(dest="demo", required=True)
    d = dsub.add_parser("counterexample", help="three lines meeting at 7/3")
    d = dsub.add_parser("antichain", help="n pairwise incomparable graphs")
    d.add_argument("n", type=int)
    d = dsub.add_parser("xif", help="derivation tree for 2^n/q")
    d.add_argument("p", type=int)
    d.add_argument("q", type=int)
    d = dsub.add_parser("dyadic", help="dyadic approximation from below")
    d.add_argument("p", type=int)
    d.add_argument("q", type=int)
    d.add_argument("eps")
    for d in dsub.choices.values():
        d.add_argument("--json", action="store_true", help="print JSON instead of text")
        d.add_argument("--out", help="also write JSON here")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, CapExceeded, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
