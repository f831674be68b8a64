"""Command line: ``linelab simulate | ratio | verify``.

Exit codes: 0 success, 2 usage error, 3 input validation failure (nonlinear
request graph), 4 property violation.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from dataclasses import dataclass
from fractions import Fraction

from .adversary import adversary_run
from .classic import star_sequence
from .core import (
    TRACE_HEADER,
    NeverSwap,
    NonlinearDemandError,
    Tracer,
    UsageError,
    as_request,
    is_linear_demand,
    write_csv,
)
from .distributed import DistributedGread
from .gread import Gread
from .oracle import OfflineLine, offline_line_baseline
from .seeding import default_seed, stream
from .verify import SUITES, run_suite
from .workloads import random_line_demand, read_sequence

EXIT_OK, EXIT_USAGE, EXIT_NONLINEAR, EXIT_VIOLATION = 0, 2, 3, 4

ALGORITHMS = ("gread", "never-swap", "offline-baseline", "distributed-gread")
GENERATORS = ("random-line-demand", "star", "adversary", "file")
RATIO_HEADER = ("n", "alg", "on_cost", "off_cost", "ratio", "length")
SUMMARY_HEADER = ("alg", "gen", "n", "m", "serving", "migration", "messages", "total")


@dataclass
class ExperimentConfig:
    command: str
    n: int | None = None
    m: int | None = None
    seed: int = 0
    epsilon: Fraction = Fraction(1, 2)
    threshold: Fraction = Fraction(0)
    alg: str = "gread"
    gen: str = "random-line-demand"
    input: str | None = None
    out: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if self.format != "csv":
            raise UsageError("only --format csv is supported")
        if self.n is not None and self.n < 2:
            raise UsageError("--n must be >= 2")
        if self.m is not None and self.m < 0:
            raise UsageError("--m must be >= 0")
        if not 0 < self.epsilon <= 1:
            raise UsageError("--epsilon must lie in (0, 1]")
        if not 0 <= self.threshold < 1:
            raise UsageError("--threshold must lie in [0, 1)")


def _player(alg: str, n: int, seed: int, sigma=None):
    if alg == "gread":
        return Gread(n)
    if alg == "never-swap":
        return NeverSwap(n)
    if alg == "distributed-gread":
        return DistributedGread(n, seed=seed)
    if alg == "offline-baseline":
        try:
            return OfflineLine(n, sigma)
        except UsageError as exc:
            raise NonlinearDemandError(str(exc)) from None
    raise UsageError(f"unknown algorithm {alg!r}")


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _fixed_sequence(cfg: ExperimentConfig) -> tuple[int, list]:
    if cfg.gen == "random-line-demand":
        n, m = cfg.n or 64, cfg.m if cfg.m is not None else 10 * (cfg.n or 64)
        return n, random_line_demand(n, m, stream(cfg.seed, "workload.random-line-demand"))
    if cfg.gen == "star":
        n, m = cfg.n or 32, cfg.m if cfg.m is not None else 10 * (cfg.n or 32)
        return n, star_sequence(n, m)
    if cfg.input is None:
        raise UsageError("--gen file needs --input")
    try:
        with open(cfg.input) as fh:
            sigma = read_sequence(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input}: {exc.strerror}") from None
    top = max((max(r) for r in sigma), default=0) + 1
    n = cfg.n if cfg.n is not None else max(top, 2)
    if top > n:
        raise UsageError(f"sequence names node {top - 1} but --n is {n}")
    if cfg.m is not None:
        sigma = sigma[: cfg.m]
    return n, sigma


def cmd_simulate(cfg: ExperimentConfig) -> int:
    cfg.validate()
    if cfg.gen == "star" and cfg.alg != "never-swap":
        raise UsageError(f"the star workload is not linear demand; --alg {cfg.alg} cannot serve it")
    if cfg.gen == "adversary":
        n = cfg.n or 64
        if cfg.alg == "offline-baseline":
            sigma = adversary_run(n, cfg.epsilon, NeverSwap(n), seed=cfg.seed, threshold=cfg.threshold).sequence
            player = Tracer(_player(cfg.alg, n, cfg.seed, sigma))
            for r in sigma:
                player.request(*r)
        else:
            player = Tracer(_player(cfg.alg, n, cfg.seed))
            adversary_run(n, cfg.epsilon, player, seed=cfg.seed, threshold=cfg.threshold)
    else:
        n, sigma = _fixed_sequence(cfg)
        if cfg.gen == "file" and not is_linear_demand(n, sigma):
            raise NonlinearDemandError("request graph of the input is not a union of paths")
        player = Tracer(_player(cfg.alg, n, cfg.seed, sigma))
        for r in sigma:
            player.request(*as_request(r))

    with _output(cfg.out) as fh:
        write_csv(fh, TRACE_HEADER, player.records)
    led = player.ledger
    write_csv(sys.stderr, SUMMARY_HEADER,
              [(cfg.alg, cfg.gen, n, len(player.records), led.serving, led.migration, led.messages, led.total)])
    return EXIT_OK


def ratio_row(n: int, alg: str, epsilon, seed: int, threshold=0) -> tuple:
    """One ``n, alg, on_cost, off_cost, ratio, length`` row.

    The online cost is serving plus swaps (message cost is reported by
    ``simulate`` only).  ``offline-baseline`` plays the sequence the
    adversary built against never-swap.
    """
    if alg == "offline-baseline":
        sigma = adversary_run(n, epsilon, NeverSwap(n), seed=seed, threshold=threshold).sequence
        player = _player(alg, n, seed, sigma)
        for r in sigma:
            player.request(*r)
    else:
        player = _player(alg, n, seed)
        sigma = adversary_run(n, epsilon, player, seed=seed, threshold=threshold).sequence
    on = player.ledger.serving + player.ledger.migration
    off = offline_line_baseline(n, sigma).total
    return n, alg, on, off, round(on / off, 6) if off else float("nan"), len(sigma)


def cmd_ratio(cfg: ExperimentConfig, ns: list[int], algs: list[str]) -> int:
    cfg.validate()
    for n in ns:
        if n < 4 or n & (n - 1):
            raise UsageError(f"--n {n} is not a power of two >= 4")
    for a in algs:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    rows = [ratio_row(n, a, cfg.epsilon, cfg.seed, cfg.threshold) for n in ns for a in algs]
    with _output(cfg.out) as fh:
        write_csv(fh, RATIO_HEADER, rows)
    return EXIT_OK


def cmd_verify(suite: str, seed: int) -> int:
    report = run_suite(suite, seed)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linelab", description="Online self-adjusting line networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=default_seed(), help="master seed (default $LINELAB_SEED or 0)")
        p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 2), help="adversary depth, in (0, 1]")
        p.add_argument("--threshold", type=_fraction, default=Fraction(0),
                       help="end adversary phases once distortion drops below this share (0 = full phases)")
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.add_argument("--format", default="csv", choices=["csv"])

    sim = sub.add_parser("simulate", help="run one algorithm on one workload, write a per-request trace")
    sim.add_argument("--alg", choices=ALGORITHMS, default="gread")
    sim.add_argument("--gen", choices=GENERATORS, default="random-line-demand")
    sim.add_argument("--n", type=int)
    sim.add_argument("--m", type=int)
    sim.add_argument("--input", help="sequence file for --gen file (one 'u v' per line)")
    common(sim)

    rat = sub.add_parser("ratio", help="competitive-ratio estimates against the adversary")
    rat.add_argument("--n", type=int, nargs="+", default=[32, 64, 128, 256])
    rat.add_argument("--alg", nargs="+", default=["gread", "never-swap"])
    common(rat)

    ver = sub.add_parser("verify", help="run a property suite")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("--seed", type=int, default=default_seed())
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.suite, args.seed)
        cfg = ExperimentConfig(
            args.command, seed=args.seed, epsilon=args.epsilon, threshold=args.threshold,
            out=args.out, format=args.format,
        )
        if args.command == "simulate":
            cfg.n, cfg.m, cfg.alg, cfg.gen, cfg.input = args.n, args.m, args.alg, args.gen, args.input
            return cmd_simulate(cfg)
        return cmd_ratio(cfg, args.n, args.alg)
    except NonlinearDemandError as exc:
        print(f"linelab: rejected nonlinear input: {exc}", file=sys.stderr)
        return EXIT_NONLINEAR
    except UsageError as exc:
        print(f"linelab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
