"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
3 search budget exhausted, 4 capacity limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds, generators, search
from .cycle_graph import build_graph, to_dot, verify_correspondence
from .errors import CapacityError, ConstructionError, SBTError
from .perm_core import format_cycles, parse_one_line, sigma_pi_inv
from .structure import analyze

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INDETERMINATE, EXIT_CAPACITY = 0, 1, 2, 3, 4

SUITES = ("example7", "lemma3-54", "lemma3-86", "td3", "prop1", "lemma1", "chain", "graph")

DEFAULT_TABLE_LIMIT = 10  # auto method uses tables up to this many symbols


class UsageError(Exception):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get("SBTLAB_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sbtlab"


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _read_perm(arg):
    if not isinstance(arg, str):
        arg = " ".join(arg)
    if arg.startswith("@"):
        try:
            arg = Path(arg[1:]).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {arg[1:]}: {e.strerror}") from None
    return parse_one_line(arg.strip())


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _table(rows) -> str:
    rows = list(rows)
    if not rows:
        return ""
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"  {k.ljust(w)}  {v}" for k, v in rows)


def _need_seed(args):
    if args.json and args.seed is None:
        raise UsageError("--seed is required with --json for randomized commands")


# ---------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    pi_hat = _read_perm(args.perm)
    rep = analyze(pi_hat)
    b = bounds.bounds_report(pi_hat, rep)
    payload = {
        "permutation": list(pi_hat.one_line),
        "cycle": pi_hat.cycle_text(),
        "sigma_pi_inv": format_cycles(sigma_pi_inv(pi_hat)),
        "structure": rep.to_json(),
        "bounds": b.to_json(),
    }
    comp_lines = []
    for comp, kind, uip in zip(rep.components, rep.component_kind, rep.uip_flags):
        cyc = "".join(str(rep.cycles.cycles[i]) for i in comp)
        tag = " [unoriented interleaving pair]" if uip else ""
        comp_lines.append(f"  {cyc}  {kind}{tag}")
    text = "\n".join([
        f"permutation   {pi_hat}",
        f"cycle form    {pi_hat.cycle_text()}",
        f"sigma*pi^-1   {format_cycles(sigma_pi_inv(pi_hat))}",
        f"odd cycles    {rep.odd_count}",
        f"is_palisade   {str(rep.is_palisade).lower()}  phi={rep.phi}",
        f"is_3perm      {str(rep.is_3perm).lower()}",
        "components",
        *comp_lines,
        "bounds",
        _table(b.rows()),
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_distance(args) -> int:
    pi_hat = _read_perm(args.perm)
    method = args.method
    if method == "auto":
        method = "table" if pi_hat.size <= DEFAULT_TABLE_LIMIT else "ida"
    if method == "table":
        table = search.load_or_build_table(pi_hat.n, args.cache_dir, not args.no_cache, args.threads)
        res = search.distance_via_table(pi_hat, table)
    else:
        res = search.exact_distance_ida(pi_hat, args.budget)
    if not res.complete:
        payload = {"permutation": list(pi_hat.one_line), **res.to_json()}
        _emit(args, payload, f"indeterminate: budget of {args.budget} nodes exhausted "
                             f"(distance >= {res.lower_bound})")
        return EXIT_INDETERMINATE
    if not search.replay(pi_hat, res.witness).is_identity():
        raise RuntimeError("witness failed to replay; this is a bug")
    payload = {"permutation": list(pi_hat.one_line), **res.to_json()}
    text = "\n".join([
        f"permutation  {pi_hat}",
        f"distance     {res.distance}",
        f"method       {res.method}",
        f"witness      {' '.join(str(t) for t in res.witness) or '(none)'}",
        f"nodes        {res.nodes_expanded}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def _tables_for(args, sizes):
    return {n: search.load_or_build_table(n, args.cache_dir, not args.no_cache, args.threads) for n in sizes}


def cmd_verify(args) -> int:
    suite = args.suite
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if suite == "example7":
        rep = search.verify_worked_example()
    elif suite == "lemma3-54":
        rep = search.verify_no_54_sequence(args.budget)
    elif suite == "lemma3-86":
        if not args.long_running:
            raise UsageError("lemma3-86 searches depth 8 on 18 symbols; pass --long-running and --budget")
        if args.budget is None:
            raise UsageError("lemma3-86 needs an explicit --budget")
        pal = generators.make_palisade(3)
        res = search.find_xy_sequence(pal, search.SequenceQuery(8, 6, 6, args.budget))
        ok = res.status == search.ABSENT
        status = res.status if res.status == search.INDETERMINATE else ("pass" if ok else "fail")
        rep = search.VerifyReport("lemma3-86", ok, status, {"permutation": str(pal), "result": res.to_json()})
    elif suite == "td3":
        n = args.n if args.n is not None else 8
        table = _tables_for(args, [n])[n]
        rep = search.verify_td3(n, table)
    elif suite == "prop1":
        _need_seed(args)
        rep = search.verify_move_classes(seed=args.seed or 0)
    elif suite == "lemma1":
        rep = search.verify_norm_oracle()
    elif suite == "chain":
        top = args.max_size if args.max_size is not None else 9
        rep = search.verify_chain(top, _tables_for(args, range(top)))
    else:
        _need_seed(args)
        rep = verify_correspondence(seed=args.seed or 0)

    text = [f"{rep.suite}: {rep.status.upper()}"]
    for k, v in rep.details.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        text.append(f"  {k}: {v}")
    text.extend(f"  mismatch: {m}" for m in rep.mismatches)
    _emit(args, rep.to_json(), "\n".join(text))
    if rep.status == search.INDETERMINATE:
        return EXIT_INDETERMINATE
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_generate(args) -> int:
    if args.family == "random_cycles":
        _need_seed(args)
    spec = generators.CorpusSpec(args.family, n=args.n, phi=args.phi, seed=args.seed, count=args.count)
    perms = [str(p) for p in generators.generate(spec)]
    payload = {"family": args.family, "n": args.n, "phi": args.phi, "seed": args.seed,
               "count": len(perms), "permutations": perms}
    _emit(args, payload, "\n".join(perms))
    return EXIT_OK


def cmd_graph(args) -> int:
    pi_hat = _read_perm(args.perm)
    g = build_graph(pi_hat)
    if args.dot is not None:
        dot = to_dot(g)
        if args.dot == "-":
            sys.stdout.write(dot)
        else:
            Path(args.dot).write_text(dot)
        if args.json:
            print(json.dumps(g.to_json(), indent=2))
        return EXIT_OK
    cycles = " ".join("(" + " ".join(map(str, c)) + ")" for c in g.graph_cycles)
    text = "\n".join([
        f"permutation  {pi_hat}",
        f"cycles       {cycles}",
        f"kappas       {g.kappas()}",
        f"odd cycles   {g.to_json()['odd_cycles']}",
        f"bp bound     {g.to_json()['bp_bound']}",
    ])
    _emit(args, g.to_json(), text)
    return EXIT_OK


def cmd_ratio(args) -> int:
    rows = []
    for phi in range(1, args.max + 1):
        r = bounds.min_ratio(phi)
        rows.append({"phi": phi, "n_plus_1": 6 * phi, "distance": bounds.palisade_distance(phi),
                     "bp_lower": 2 * phi, "ratio": str(r), "ratio_value": float(r)})
    best = min(rows, key=lambda row: bounds.min_ratio(row["phi"]))
    head = f"{'phi':>5} {'n+1':>6} {'d_t':>5} {'bp':>5}  ratio"
    lines = [head] + [
        f"{row['phi']:>5} {row['n_plus_1']:>6} {row['distance']:>5} {row['bp_lower']:>5}  "
        f"{row['ratio']} = {row['ratio_value']:.6g}"
        for row in rows
    ]
    lines.append(f"minimum ratio {best['ratio']} = {best['ratio_value']:.6g}")
    _emit(args, {"rows": rows, "min_ratio": best["ratio"]}, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--budget", type=_positive, default=None, help="node limit for searches")
    common.add_argument("--cache-dir", type=Path, default=None)
    common.add_argument("--no-cache", action="store_true", help="rebuild distance tables")

    p = argparse.ArgumentParser(prog="sbtlab", description="Sorting by transpositions workbench")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="structure and bounds of a permutation")
    a.add_argument("perm", nargs="+", help='one-line text such as "[5 4 3 2 1]", or @file')
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("distance", parents=[common], help="exact transposition distance")
    d.add_argument("perm", nargs="+")
    d.add_argument("--method", choices=("auto", "table", "ida"), default="auto")
    d.set_defaults(func=cmd_distance)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--n", type=int, default=None, help="size for the td3 suite")
    v.add_argument("--max-size", type=int, default=None, help="largest n+1 for the chain suite")
    v.add_argument("--long-running", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", parents=[common], help="emit a permutation family")
    g.add_argument("family", choices=generators.FAMILIES)
    g.add_argument("--phi", type=int, default=None)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--count", type=int, default=None)
    g.set_defaults(func=cmd_generate)

    gr = sub.add_parser("graph", parents=[common], help="cycle graph of a permutation")
    gr.add_argument("perm", nargs="+")
    gr.add_argument("--dot", default=None, metavar="PATH", help="write DOT to PATH, or - for stdout")
    gr.set_defaults(func=cmd_graph)

    r = sub.add_parser("ratio", parents=[common], help="distance over lower bound for palisades")
    r.add_argument("--max", type=_positive, default=8)
    r.set_defaults(func=cmd_ratio)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConstructionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except SBTError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
