"""Command line entry point: ``regcut <subcommand> ...``.

Every subcommand prints one JSON document on stdout. Errors print a single
``{"error": ...}`` line on stderr and exit 1; ``verify`` exits 2 when the
residual exceeds ``eps * m``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cutnorm as cn
from .graph import load_graph, members
from .maxcut import (NoFeasibleSample, SolveRequest, prepare, solve, solve_bisection,
                     solve_maxcut_sweep)
from .regularity import decompose, decomposition_from_dict, residual_cutnorm_certificate
from .spectral import graph_spectrum, threshold_rank


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _graph_header(g):
    return {"n": g.n, "m": g.m, "edge_weight": g.edge_weight}


def _check_eps(eps, hi):
    if not 0 < eps < hi:
        raise UsageError(f"--eps must lie in (0, {hi:g}), got {eps}")


def cmd_spectrum(args):
    g = load_graph(Path(args.graph))
    spec = graph_spectrum(g)
    ranks = []
    for delta in args.delta:
        td = threshold_rank(spec, delta)
        ranks.append({"delta": delta, "k": td.k, "kept": [int(i) for i in td.kept_indices]})
    _emit({**_graph_header(g), "eigenvalues": spec.values.tolist(), "threshold_rank": ranks})
    return 0


def cmd_decompose(args):
    _check_eps(args.eps, 2)
    g = load_graph(Path(args.graph))
    d = decompose(g, args.eps, oracle=args.oracle, seed=args.seed, mode=args.mode)
    Path(args.out).write_text(d.to_json() + "\n")
    _emit({**_graph_header(g), "epsilon": d.epsilon, "k": d.k, "sigma": d.sigma,
           "sigma_cap": d.sigma_cap, "alpha_max": d.alpha_max,
           "certified_residual": d.certified_residual,
           "stalled_witness": d.stalled_witness})
    return 0


def cmd_verify(args):
    g = load_graph(Path(args.graph))
    d = decomposition_from_dict(json.loads(Path(args.decomposition).read_text()), g)
    if d.n != g.n:
        raise UsageError(f"decomposition has n={d.n}, graph has n={g.n}")
    residual = residual_cutnorm_certificate(g, d)
    bound = d.epsilon * g.m
    ok = residual <= bound + 1e-8
    _emit({**_graph_header(g), "epsilon": d.epsilon, "sigma": d.sigma,
           "residual": residual, "bound": bound, "ok": ok})
    return 0 if ok else 2


def _read_set(path):
    text = Path(path).read_text().strip()
    if text.startswith("["):
        return json.loads(text)
    return [int(tok) for tok in text.split()]


def _result_json(g, res):
    return {"S": members(res.s), "cut_A": res.cut_value_A, "cut_W": res.cut_value_W,
            "dS": res.degree_mass, "gamma": res.gamma, "m": g.m, "edge_weight": g.edge_weight,
            "certified": res.certified, "guesses_tried": res.guesses_tried}


def _dump_partition(args, prep):
    if args.dump_partition:
        Path(args.dump_partition).write_text(prep.scheme.to_json() + "\n")


def cmd_maxcut(args):
    _check_eps(args.eps, 1)
    g = load_graph(Path(args.graph))
    prep = prepare(g, args.eps, args.oracle, args.seed)
    _dump_partition(args, prep)
    if args.planted:
        planted = _read_set(args.planted)
        gamma = float(sum(g.degree[v] for v in planted))
        res = solve(g, SolveRequest("maximize", gamma, args.eps, args.budget, planted=planted,
                                    seed=args.seed, oracle=args.oracle), prep)
    else:
        res = solve_maxcut_sweep(g, args.eps, args.budget, args.seed, args.oracle, prep)
    _emit(_result_json(g, res))
    return 0


def cmd_bisect(args):
    _check_eps(args.eps, 1)
    g = load_graph(Path(args.graph))
    objective = {"max": "maximize", "min": "minimize"}[args.objective]
    prep = prepare(g, args.eps, args.oracle, args.seed)
    _dump_partition(args, prep)
    planted = _read_set(args.planted) if args.planted else None
    res = solve(g, SolveRequest(objective, g.m / 2, args.eps, args.budget, planted=planted,
                                seed=args.seed, oracle=args.oracle), prep)
    _emit(_result_json(g, res))
    return 0


def cmd_oracle_bench(args):
    report = cn.oracle_bench(args.instances, args.seed, args.max_n, args.restarts)
    if not args.rows:
        report.pop("rows")
    _emit(report)
    return 0


def build_parser():
    p = _Parser(prog="regcut", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("spectrum", help="eigenvalues and threshold ranks")
    s.add_argument("--delta", type=float, action="append", required=True)
    s.add_argument("graph")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("decompose", help="cut decomposition to a JSON file")
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--oracle", choices=["auto", "exact", "heuristic"], default="auto")
    s.add_argument("--mode", choices=["theorem", "proposition"], default="theorem")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("graph")
    s.add_argument("out")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", help="exact residual cut norm of a decomposition")
    s.add_argument("graph")
    s.add_argument("decomposition")
    s.set_defaults(func=cmd_verify)

    for name, func in (("maxcut", cmd_maxcut), ("bisect", cmd_bisect)):
        s = sub.add_parser(name, help=f"approximate {name}")
        if name == "bisect":
            s.add_argument("--objective", choices=["max", "min"], required=True)
        s.add_argument("--eps", type=float, required=True)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--budget", type=int, default=10 ** 6)
        s.add_argument("--oracle", choices=["auto", "exact", "heuristic"], default="auto")
        s.add_argument("--planted", help="file listing the vertices of a known set")
        s.add_argument("--dump-partition", help="write the partition scheme as JSON")
        s.add_argument("graph")
        s.set_defaults(func=func)

    s = sub.add_parser("oracle-bench", help="heuristic vs exact cut norm")
    s.add_argument("--instances", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-n", type=int, default=10)
    s.add_argument("--restarts", type=int, default=cn.DEFAULT_RESTARTS)
    s.add_argument("--rows", action="store_true", help="include every instance")
    s.set_defaults(func=cmd_oracle_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError, OSError, NoFeasibleSample, cn.OracleRefused) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
