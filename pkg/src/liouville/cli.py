"""Command-line front end.

Every command prints a JSON outcome on stdout (``verify`` prints one line
per check unless ``--json`` is given) and exits 0 on pass, 1 when an
asserted bound fails and 2 on usage or domain errors. Progress of long
scans goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import mpmath
from mpmath import mpf

from . import __version__
from .means import CROSSING_WIDTH, find_sign_crossing, s_minus, s_plus
from .moebius import mobius_lambert_classic, mobius_plus_series
from .multiplicative import DEFAULT_SEGMENT_LENGTH, sieve_segment, write_segment_csv
from .precision import BoundedValue, PrecisionContext, render, zeta_real
from .scan import (
    CheckpointError,
    default_threads,
    load_checkpoint,
    log_density_negative,
    scan_summatory,
    write_events_csv,
)
from .theta import phi, theta
from .verification import SUITES, run_suite

__all__ = ["CommandOutcome", "main", "run"]

EXIT_CODES = {"pass": 0, "fail": 1, "error": 2}
PROGRESS_EVERY = 10**7
SERIES = {
    "splus": s_plus,
    "sminus": s_minus,
    "phi": phi,
    "theta": theta,
    "lambert": mobius_lambert_classic,
    "lambert-plus": mobius_plus_series,
}


@dataclass
class CommandOutcome:
    command: str
    params: dict
    status: str
    payload: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "status": self.status,
            "payload": self.payload,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _dec(x) -> str:
    if isinstance(x, BoundedValue):
        return render(x)
    return mpmath.nstr(mpf(x), 17)


def _bounded(bv: BoundedValue) -> dict:
    with mpmath.workprec(bv.precision_bits + 16):
        digits = int(bv.precision_bits * 0.302) + 1
        return {
            "rendered": render(bv),
            "value": mpmath.nstr(bv.value, digits),
            "error_bound": mpmath.nstr(bv.error_bound, 3),
        }


def _positive_int(text: str) -> int:
    try:
        value = int(text.replace("_", ""))
    except ValueError:
        try:
            value = int(float(text))
            if float(text) != value:
                raise ValueError
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _real(text: str) -> str:
    try:
        mpf(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    return text


def _progress_printer(label: str):
    state = {"next": PROGRESS_EVERY}

    def report(n: int) -> None:
        if n >= state["next"]:
            print(f"{label}: n = {n:,}", file=sys.stderr, flush=True)
            state["next"] = (n // PROGRESS_EVERY + 1) * PROGRESS_EVERY

    return report


def _threads(args) -> int:
    return args.threads if args.threads else default_threads()


def _cmd_sieve(args) -> tuple[str, dict]:
    seg = sieve_segment(args.lo, args.hi, max_length=args.max_length)
    payload = {
        "lo": seg.lo,
        "hi": seg.hi,
        "rows": len(seg),
        "lambda_sum": int(seg.lambda_vals.sum(dtype="int64")),
        "mu_sum": int(seg.mu_vals.sum(dtype="int64")),
    }
    if args.out:
        write_segment_csv(seg, args.out)
        payload["csv"] = str(args.out)
    return "pass", payload


def _cmd_scan(args) -> tuple[str, dict]:
    checkpoint = None
    if args.checkpoint and Path(args.checkpoint).exists():
        checkpoint = load_checkpoint(args.checkpoint)
        if checkpoint.next_n > args.to + 1:
            raise ValueError(f"checkpoint already past --to (next_n={checkpoint.next_n})")
    report = scan_summatory(
        args.to,
        checkpoint,
        segment_length=args.segment,
        threads=_threads(args),
        checkpoint_path=args.checkpoint,
        progress=_progress_printer("scan"),
    )
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    if args.events_csv:
        write_events_csv(report, args.events_csv)
    payload = report.to_dict()
    payload["resumed_from"] = checkpoint.next_n if checkpoint else None
    return "pass", payload


def _cmd_density(args) -> tuple[str, dict]:
    value = log_density_negative(args.to, segment_length=args.segment, threads=_threads(args))
    return "pass", {"n_max": args.to, "log_density_negative": repr(value)}


def _cmd_eval(args) -> tuple[str, dict]:
    ctx = PrecisionContext(args.prec)
    value = SERIES[args.series](args.x, ctx)
    return "pass", {"series": args.series, "x": args.x, **_bounded(value)}


def _cmd_crossing(args) -> tuple[str, dict]:
    ctx = PrecisionContext(args.prec)
    a, b = find_sign_crossing(args.lo, args.hi, ctx)
    with ctx.workprec(16):
        root = 3 - 2 * mpmath.sqrt(2)
        width = b - a
        payload = {
            "interval": [mpmath.nstr(a, 25), mpmath.nstr(b, 25)],
            "width": mpmath.nstr(width, 5),
            "main_term_root": mpmath.nstr(root, 25),
            "contains_main_term_root": bool(a <= root <= b),
            "distance_to_main_term_root": mpmath.nstr(min(abs(a - root), abs(b - root)), 5),
        }
    return ("pass" if width <= CROSSING_WIDTH else "fail"), payload


def _cmd_verify(args) -> tuple[str, dict]:
    checks = run_suite(args.suite, PrecisionContext(args.prec))
    status = "pass" if all(c.passed for c in checks) else "fail"
    return status, {"suite": args.suite, "checks": [c.to_dict() for c in checks]}


def _cmd_zeta(args) -> tuple[str, dict]:
    return "pass", {"s": args.s, **_bounded(zeta_real(args.s, PrecisionContext(args.prec)))}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="liouville", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def threads_flag(p):
        p.add_argument("--threads", type=_positive_int, default=None, help="sieving workers (default: NT_THREADS or CPU count)")
        p.add_argument("--segment", type=_positive_int, default=DEFAULT_SEGMENT_LENGTH, help="sieve segment length")

    def prec_flag(p):
        p.add_argument("--prec", type=_positive_int, default=128, help="working precision in bits (>= 53)")

    p = sub.add_parser("sieve", help="lambda and mu over [lo, hi]")
    p.add_argument("--lo", type=_positive_int, required=True)
    p.add_argument("--hi", type=_positive_int, required=True)
    p.add_argument("--out", type=Path, help="CSV file with header n,lambda,mu")
    p.add_argument("--max-length", type=_positive_int, default=DEFAULT_SEGMENT_LENGTH)
    p.set_defaults(handler=_cmd_sieve)

    p = sub.add_parser("scan", help="exact scan of L(n) and M(n)")
    p.add_argument("--to", type=_positive_int, required=True)
    p.add_argument("--checkpoint", type=Path, help="resume from / save to this checkpoint file")
    p.add_argument("--report", type=Path, help="write the report JSON here")
    p.add_argument("--events-csv", type=Path, help="write the n,L events here")
    threads_flag(p)
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("density", help="logarithmic density of {n : L(n) < 0}")
    p.add_argument("--to", type=_positive_int, required=True)
    threads_flag(p)
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("eval", help="evaluate one series with its error bound")
    p.add_argument("--series", choices=sorted(SERIES), required=True)
    p.add_argument("--x", type=_real, required=True)
    prec_flag(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("crossing", help="bisect the sign change of s_plus")
    p.add_argument("--lo", type=_real, required=True)
    p.add_argument("--hi", type=_real, required=True)
    prec_flag(p)
    p.set_defaults(handler=_cmd_crossing)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], required=True)
    p.add_argument("--json", action="store_true", help="emit the JSON outcome instead of check lines")
    prec_flag(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("zeta", help="zeta(s) for real s > 1")
    p.add_argument("--s", type=_real, required=True)
    prec_flag(p)
    p.set_defaults(handler=_cmd_zeta)
    return parser


def run(argv: list[str] | None = None) -> CommandOutcome:
    """Parse ``argv`` and execute; never raises for usage or domain errors."""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        command = argv[0] if argv else ""
        return CommandOutcome(command, {"argv": argv}, "error", {"error": str(exc)})
    params = {
        k: (str(v) if isinstance(v, Path) else v)
        for k, v in vars(args).items()
        if k not in ("handler", "command")
    }
    try:
        status, payload = args.handler(args)
    except (ValueError, ArithmeticError, CheckpointError, OSError) as exc:
        print(f"liouville {args.command}: error: {exc}", file=sys.stderr)
        status, payload = "error", {"error": str(exc)}
    elapsed = int((time.perf_counter() - started) * 1000)
    return CommandOutcome(args.command, params, status, payload, elapsed)


def main(argv: list[str] | None = None) -> int:
    outcome = run(argv)
    if outcome.command == "verify" and not outcome.params.get("json") and outcome.status != "error":
        for check in outcome.payload["checks"]:
            mark = "PASS" if check["passed"] else "FAIL"
            print(f"{mark}  {check['name']}")
        print(f"{outcome.status.upper()}  suite={outcome.payload['suite']}  ({outcome.elapsed_ms} ms)")
    else:
        print(outcome.to_json())
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
