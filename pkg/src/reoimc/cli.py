"""Command-line front end: ``reoimc build|minimize|check-bisim|stats|export|steady-state``.

Exit status is 0 on success, 1 on a semantic failure (bad circuit, models
not bisimilar, open model) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .analysis import AnalysisError, steady_state, to_ctmc
from .bisim import are_bisimilar, strong_bisim_minimize
from .circuit import CircuitError
from .composer import CleanupOptions, compose_circuit, deploy_circuit
from .dsl import DslError, parse
from .imc import stats
from .serialize import ModelFileError, dumps, load, to_dot


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    circuit = parse(Path(args.circuit).read_text(encoding="utf-8"))
    options = CleanupOptions.from_env()
    if args.phase == "design":
        model = compose_circuit(circuit, options)
    else:
        model = deploy_circuit(circuit, erase_labels=not args.keep_labels, options=options)
    if args.out:
        Path(args.out).write_text(dumps(model), encoding="utf-8")
    print(f"{circuit.name} ({args.phase}): {stats(model)}")
    return 0


def cmd_minimize(args) -> int:
    model = load(args.model)
    small = strong_bisim_minimize(model)
    if args.out:
        Path(args.out).write_text(dumps(small), encoding="utf-8")
    print(f"{model.n} -> {small.n} states")
    return 0


def cmd_check_bisim(args) -> int:
    same = are_bisimilar(load(args.first), load(args.second))
    print("bisimilar" if same else "not bisimilar")
    return 0 if same else 1


def cmd_stats(args) -> int:
    print(stats(load(args.model)))
    return 0


def cmd_export(args) -> int:
    model = load(args.model)
    if args.dot:
        _emit(to_dot(model, Path(args.model).stem), args.out)
    else:
        _emit(dumps(model), args.out)
    return 0


def cmd_steady_state(args) -> int:
    chain = to_ctmc(load(args.model), uniform=args.uniform)
    pi = steady_state(chain)
    for labels, p in zip(chain.labels, pi):
        print(f"{p:.12g}\t{' | '.join(str(l) for l in labels)}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reoimc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compose a circuit file into a model file")
    p.add_argument("circuit")
    p.add_argument("--phase", choices=("design", "deploy"), default="design")
    p.add_argument(
        "--keep-labels", action="store_true", help="keep boundary actions after deployment"
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("minimize", help="strong-bisimulation quotient")
    p.add_argument("model")
    p.add_argument("--out")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("check-bisim", help="exit 0 iff the two models are bisimilar")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_check_bisim)

    p = sub.add_parser("stats", help="state and transition counts")
    p.add_argument("model")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="write a model as DOT or canonical JSON")
    p.add_argument("model")
    fmt = p.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("steady-state", help="stationary distribution of a closed model")
    p.add_argument("model")
    p.add_argument(
        "--uniform", action="store_true", help="resolve tau-nondeterminism uniformly"
    )
    p.set_defaults(func=cmd_steady_state)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.verbose else logging.ERROR,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except DslError as exc:
        for d in exc.diagnostics:
            print(f"{args.circuit}:{d}", file=sys.stderr)
        return 1
    except (CircuitError, ModelFileError, AnalysisError, ValueError, OSError) as exc:
        print(f"reoimc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
