"""Command-line entry point: ``asymstream {match,lcs,wildcard,gen,bench}``.

Each run prints one JSON report line on stdout and a short summary on
stderr. Exit status: 0 found / positive, 1 not found / zero, 2 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bench, generators
from .core import ContractError, DomainError, SpaceMeter, open_stream, open_text
from .hashing import FingerprintContext
from .lcs import lcs_approx_logrounds, lcs_approx_multipass, lcs_exact
from .pattern_match import match_run
from .wildcard import ORACLES, WildcardPattern, sampled_wildcard_match

EXIT_FOUND, EXIT_NOT_FOUND, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    command: str
    answer: dict
    passes: int
    peak_state_words: int
    text_reads: int
    seed: int | None
    params: dict = field(default_factory=dict)
    # wall time varies run to run; left out of the JSON unless --timing is given
    wall_time_ms: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "RunReport":
        return cls(**json.loads(line))


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ASYMSTREAM_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"ASYMSTREAM_SEED is not an integer: {env!r}")
    return int.from_bytes(os.urandom(4), "little")


def _emit(report: RunReport, args, elapsed_ms: float, summary: str) -> None:
    if args.timing:
        report.wall_time_ms = round(elapsed_ms, 3)
    print(report.to_json())
    if not args.json:
        print(f"{summary} ({elapsed_ms:.1f} ms)", file=sys.stderr)


def cmd_match(args) -> int:
    seed = _seed(args)
    text = open_text(args.text)
    stream = open_stream(args.pattern)
    meter = SpaceMeter()
    mode = "verified" if args.deterministic else "randomized"
    ctx = FingerprintContext.for_text(text, seed=seed, modulus_bits=args.modulus_bits)
    t0 = time.perf_counter()
    win = match_run(text, stream, mode=mode, ctx=ctx, meter=meter)
    elapsed = (time.perf_counter() - t0) * 1000
    answer = {"found": win is not None, "interval": list(win) if win else None}
    report = RunReport(
        "match", answer, stream.passes_started, meter.peak_words, text.reads_performed, seed,
        {"mode": mode, "modulus_bits": args.modulus_bits, "q": ctx.q},
    )
    _emit(report, args, elapsed, f"match: {'found at ' + str(win[0]) if win else 'not found'}")
    return EXIT_FOUND if win else EXIT_NOT_FOUND


def cmd_lcs(args) -> int:
    seed = _seed(args)
    text = open_text(args.text)
    if args.mode != "exact" and args.stream == "-":
        raise UsageError("replayable source required for approximate modes")
    stream = open_stream(args.stream)
    meter = SpaceMeter()
    verified = not args.randomized
    t0 = time.perf_counter()
    interval = None
    if args.mode == "exact":
        res = lcs_exact(
            text, stream, mode="verified" if verified else "randomized",
            seed=seed, meter=meter, modulus_bits=args.modulus_bits or 61,
        )
        length, interval = res.length, res.interval
    elif text.length == 0:
        length = 0
    else:
        ctx = FingerprintContext.for_text(text, seed=seed, modulus_bits=args.modulus_bits)
        if args.mode == "approx":
            length = lcs_approx_multipass(
                text, stream, args.epsilon, args.kappa, verified=verified, ctx=ctx, meter=meter
            )
        else:
            length = lcs_approx_logrounds(
                text, stream, args.epsilon, verified=verified, ctx=ctx, meter=meter
            )
    elapsed = (time.perf_counter() - t0) * 1000
    answer = {"found": length > 0, "length": length, "interval": list(interval) if interval else None}
    bits = (args.modulus_bits or 61) if args.mode == "exact" else args.modulus_bits
    params = {"mode": args.mode, "verified": verified, "modulus_bits": bits}
    if args.mode != "exact":
        params.update(epsilon=str(args.epsilon), kappa=str(args.kappa))
    report = RunReport(
        "lcs", answer, stream.passes_started, meter.peak_words, text.reads_performed, seed, params
    )
    _emit(report, args, elapsed, f"lcs: length {length}")
    return EXIT_FOUND if length > 0 else EXIT_NOT_FOUND


def cmd_wildcard(args) -> int:
    text = Path(args.text).read_bytes()
    pattern = WildcardPattern.parse(Path(args.pattern).read_bytes(), wildcard=args.wildcard_byte)
    if args.space_budget < 1 or args.space_budget > max(len(text), 1):
        raise UsageError(f"space budget must lie in 1..{len(text)}")
    meter = SpaceMeter()
    t0 = time.perf_counter()
    pos = sampled_wildcard_match(text, pattern, args.space_budget, oracle=args.oracle, meter=meter)
    elapsed = (time.perf_counter() - t0) * 1000
    report = RunReport(
        # both strings are loaded whole: this algorithm is not a streaming one
        "wildcard", {"found": pos is not None, "position": pos}, 0, meter.peak_words,
        len(text), None, {"space_budget": args.space_budget, "oracle": args.oracle,
                  "wildcard_byte": args.wildcard_byte},
    )
    _emit(report, args, elapsed, f"wildcard: {'found at ' + str(pos) if pos else 'not found'}")
    return EXIT_FOUND if pos is not None else EXIT_NOT_FOUND


def _gen_params(args) -> dict:
    kind = args.kind
    try:
        if kind in ("random", "periodic"):
            return {"n": args.n, "m": args.m, "sigma": args.sigma, "period": args.period}
        if kind == "planted-lcs":
            return {"n": args.n, "m": args.m or args.n, "L": args.L, "sigma": args.sigma}
        wild = [int(x) for x in args.wild.split(",") if x.strip()] if args.wild else []
        return {"kk": args.kk, "i": args.i, "wild": wild}
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_gen(args) -> int:
    seed = _seed(args)
    params = _gen_params(args)
    for key in ("n", "kk", "i"):
        if key in params and (params[key] is None or params[key] < (0 if key == "n" else 1)):
            raise UsageError(f"--{key} is required and must be valid")
    try:
        sidecar = generators.write_instance(args.out, args.kind, params, seed)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid parameters: {exc}")
    report = RunReport("gen", {"found": True, "out": str(args.out)}, 0, 0, 0, seed,
                       {"kind": args.kind, **sidecar["params"]})
    _emit(report, args, 0.0, f"gen: wrote {args.out}")
    return EXIT_FOUND


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else None
    rows = bench.run_suite(args.suite, sizes, args.repetitions)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    else:
        bench.write_csv(rows, sys.stdout)
    return EXIT_FOUND


def _byte(value: str) -> int:
    if len(value) == 1:
        return ord(value)
    v = int(value, 0)
    if not 0 <= v < 256:
        raise argparse.ArgumentTypeError("wildcard byte must lie in 0..255")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (env ASYMSTREAM_SEED)")
    common.add_argument("--json", action="store_true", help="JSON report only, no stderr summary")
    common.add_argument("--timing", action="store_true", help="include wall_time_ms in the report")

    p = argparse.ArgumentParser(prog="asymstream", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", parents=[common], help="pattern streamed against a text file")
    m.add_argument("text")
    m.add_argument("pattern", nargs="?", default="-", help="file, or - for stdin (default)")
    m.add_argument("--deterministic", action="store_true")
    m.add_argument("--modulus-bits", type=int, default=None)
    m.set_defaults(func=cmd_match)

    lc = sub.add_parser("lcs", parents=[common], help="longest common substring")
    lc.add_argument("text")
    lc.add_argument("stream", nargs="?", default="-")
    lc.add_argument("--mode", choices=("exact", "approx", "logrounds"), default="exact")
    lc.add_argument("--epsilon", type=float, default=0.1)
    lc.add_argument("--kappa", type=float, default=0.5)
    lc.add_argument("--randomized", action="store_true", help="skip character verification")
    lc.add_argument("--deterministic", action="store_true", help="verified mode (default)")
    lc.add_argument("--modulus-bits", type=int, default=None)
    lc.set_defaults(func=cmd_lcs)

    w = sub.add_parser("wildcard", parents=[common], help="sampled wildcard matching")
    w.add_argument("text")
    w.add_argument("pattern")
    w.add_argument("--space-budget", "-s", type=int, required=True)
    w.add_argument("--oracle", choices=sorted(ORACLES), default="auto")
    w.add_argument("--wildcard-byte", type=_byte, default=ord("?"))
    w.set_defaults(func=cmd_wildcard)

    g = sub.add_parser("gen", parents=[common], help="write a seeded instance and truth sidecar")
    g.add_argument("kind", choices=generators.KINDS)
    g.add_argument("--out", required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--sigma", type=int, default=2)
    g.add_argument("--period", type=int, default=3)
    g.add_argument("--L", type=int)
    g.add_argument("--kk", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--wild", default="", help="comma-separated wildcard positions")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", parents=[common], help="timing grid as CSV")
    b.add_argument("suite", choices=bench.SUITES)
    b.add_argument("--sizes", default=None, help="comma-separated grid (n, or s for wildcard)")
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_FOUND
    try:
        return args.func(args)
    except (UsageError, ContractError, DomainError, OSError, ValueError) as exc:
        print(f"asymstream {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
