"""Command-line entry point: ``qinfo bench|teleport|dump``.

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import randobj
from .experiments import (
    BENCH_COLUMNS,
    TASKS,
    TELEPORT_COLUMNS,
    BenchmarkSpec,
    TeleportSpec,
    run_benchmark,
    run_teleportation,
)
from .matio import dump_matrix, format_matrix

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2

ENSEMBLES = (
    "ginibre",
    "wishart",
    "circular",
    "circular_real",
    "circular_quaternion",
    "haar_ket",
    "hs_state",
    "choi_channel",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty dimension list")
    return values


def _rational(text: str) -> float:
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qinfo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bench = sub.add_parser("bench", help="time the benchmark tasks, write CSV")
    bench.add_argument("--task", default="all", choices=[*TASKS, "all"])
    bench.add_argument("--dims", type=_int_list, default=[4, 16, 64, 256, 1024])
    bench.add_argument("--steps", type=int, default=1000)
    bench.add_argument("--seed", type=int, default=42)
    bench.add_argument("--out", help="CSV path (default: stdout)")

    tele = sub.add_parser("teleport", help="noisy teleportation fidelity sweep, write CSV")
    tele.add_argument("--gamma-start", type=float, default=0.0)
    tele.add_argument("--gamma-stop", type=float, default=1.0)
    tele.add_argument("--gamma-step", type=float, default=0.01)
    tele.add_argument("--trials", type=int, default=100)
    tele.add_argument("--seed", type=int, default=42)
    tele.add_argument("--out", help="CSV path (default: stdout)")

    dump = sub.add_parser("dump", help="sample one random object and write it as a text matrix")
    dump.add_argument("--ensemble", required=True, choices=ENSEMBLES)
    dump.add_argument("--beta", type=int, default=2)
    dump.add_argument("--K", type=_rational, default=1.0, help="rank factor, e.g. 0.2 or 1/5")
    dump.add_argument("--m", type=int)
    dump.add_argument("--n", type=int)
    dump.add_argument("--d", type=int)
    dump.add_argument("--idim", type=int)
    dump.add_argument("--odim", type=int)
    dump.add_argument("--seed", type=int, default=42)
    dump.add_argument("--out", help="output path (default: stdout)")
    return parser


def _write_csv(rows, columns, path):
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if path:
            fh.close()


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--ensemble {args.ensemble} requires {' '.join(missing)}")


def make_descriptor(args):
    kind = args.ensemble
    if kind == "ginibre":
        _need(args, "m")
        return randobj.GinibreEnsemble(args.m, args.n, args.beta)
    if kind == "circular_real":
        _need(args, "d")
        return randobj.CircularRealEnsemble(args.d)
    if kind == "circular_quaternion":
        _need(args, "d")
        return randobj.CircularQuaternionEnsemble(args.d)
    if kind == "choi_channel":
        _need(args, "idim")
        return randobj.ChoiJamiolkowskiMatrices(args.idim, args.odim, args.beta, args.K)
    _need(args, "d")
    if kind == "wishart":
        return randobj.WishartEnsemble(args.d, args.beta, args.K)
    if kind == "circular":
        return randobj.CircularEnsemble(args.d, args.beta)
    if kind == "haar_ket":
        return randobj.HaarKet(args.d, args.beta)
    return randobj.HilbertSchmidtStates(args.d, args.beta, args.K)


def _run(args) -> int:
    if args.command == "bench":
        spec = BenchmarkSpec(args.task, tuple(args.dims), args.steps, args.seed)
        _write_csv(run_benchmark(spec), BENCH_COLUMNS, args.out)
    elif args.command == "teleport":
        spec = TeleportSpec(args.gamma_start, args.gamma_stop, args.gamma_step, args.trials, args.seed)
        _write_csv(run_teleportation(spec), TELEPORT_COLUMNS, args.out)
    else:
        obj = make_descriptor(args).sample(args.seed)
        m = obj.choi() if hasattr(obj, "choi") else np.asarray(obj)
        if args.out:
            dump_matrix(m, args.out)
        else:
            sys.stdout.write(format_matrix(m))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"qinfo: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ValueError, TypeError, OSError) as exc:
        print(f"qinfo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
