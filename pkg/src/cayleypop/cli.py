"""Command-line runner: ``cayleypop exp1|exp2|exp3|graph``."""

from __future__ import annotations

import argparse
import json
import sys

from .exceptions import CayleyPopError
from .experiments import ExperimentConfig, emit_outputs, run_experiment
from .groups import CyclicGroup, cayley_digraph, cayley_graph, export_dot, free_group_ball
from .semiring import decorated_group

KINDS = {"exp1": "stationary-h1", "exp2": "stationary-h2", "exp3": "time-evolution"}


class _Parser(argparse.ArgumentParser):
    # usage errors also end with the machine-readable error line
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "UsageError", "message": f"{self.prog}: {message}"}), file=sys.stderr)
        sys.exit(2)


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file (version 1 schema)")
    p.add_argument("--mode", choices=["exact", "chip"])
    p.add_argument("--chips", type=int, dest="initial_chips", help="initial number of chips (chip mode)")
    p.add_argument("--out", help="output directory")
    p.add_argument("-N", type=int, help="order of the cyclic group")
    p.add_argument("-k", type=int, help="Fourier mode index (stationary runs)")
    p.add_argument("-t", type=float, help="evolution time (exp3)")
    p.add_argument("-m", type=int, help="number of product steps (exp3)")
    p.add_argument("--steps", type=int, help="number of steps (stationary runs)")
    p.add_argument("--paper-literal-d10", action="store_true", default=None,
                   help="use hopping weight t/m (realizes exp(2itH)) in exp3")
    p.add_argument("--graph", action="store_true", help="also write graph.dot")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayleypop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, kind in KINDS.items():
        _add_run_options(sub.add_parser(name, help=f"run the {kind} experiment"))

    g = sub.add_parser("graph", help="write a Cayley graph or digraph as DOT")
    g.add_argument("-N", type=int, default=8)
    g.add_argument("--decorated", action="store_true", help="use Z4 x Z_N; generators are 'j,n'")
    g.add_argument("--generator", action="append", dest="generators",
                   help="generator element ('n', or 'j,n' with --decorated); repeatable")
    g.add_argument("--undirected", action="store_true")
    g.add_argument("--free", nargs=2, type=int, metavar=("GENERATORS", "RADIUS"),
                   help="ball of the free group instead of a cyclic group")
    g.add_argument("--out", help="output file (default: stdout)")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if args.config else ExperimentConfig(KINDS[args.command])
    if cfg.experiment != KINDS[args.command]:
        cfg = cfg.replace(experiment=KINDS[args.command])
    overrides = {
        key: getattr(args, attr)
        for key, attr in [("N", "N"), ("k", "k"), ("t", "t"), ("m", "m"), ("steps", "steps"),
                          ("mode", "mode"), ("initial_chips", "initial_chips"),
                          ("paper_literal_d10", "paper_literal_d10"), ("output_dir", "out")]
        if getattr(args, attr) is not None
    }
    return cfg.replace(**overrides) if overrides else cfg


def _graph_text(args: argparse.Namespace) -> str:
    if args.free:
        return export_dot(free_group_ball(*args.free))
    base = CyclicGroup(args.N)
    G = decorated_group(base) if args.decorated else base
    specs = args.generators or (["0,1"] if args.decorated else ["1"])
    gens = []
    for spec in specs:
        parts = [int(x) for x in spec.split(",")]
        if args.decorated:
            j, n = parts
            gens.append(G.compose(j % 4, n % args.N))
        else:
            (n,) = parts
            gens.append(n % args.N)
    graph = cayley_graph(G, gens) if args.undirected else cayley_digraph(G, gens)
    return export_dot(graph)


def _summary(result) -> dict:
    out = {"experiment": result.config.experiment, "mode": result.config.mode}
    if result.expected_epsilon is not None:
        out["expected_epsilon"] = result.expected_epsilon
        out["max_ratio_deviation"] = result.max_ratio_deviation()
    out.update(result.fidelity)
    if result.ledger is not None:
        out["chips_lost"] = result.ledger.total_lost
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "graph":
            text = _graph_text(args)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        cfg = resolve_config(args)
        result = run_experiment(cfg)
        if cfg.output_dir:
            emit_outputs(result, cfg.output_dir, graph=args.graph)
        print(json.dumps(_summary(result), sort_keys=True))
        return 0
    except (CayleyPopError, OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
