"""Command-line front end.

    catmaj decide  --x 0.4,0.4,0.1,0.1 --y 0.5,0.25,0.25,0
    catmaj certify --x 0.4,0.4,0.1,0.1 --y 0.5,0.25,0.25,0 --format json
    catmaj verify  --x ... --y ... --z 3/5,2/5
    catmaj curve   --x ... --y ... --r-min -1 --r-max 8 --samples 181 --out curve.csv
    catmaj rand    --d 3 --count 100 --seed 7

Exit codes: 0 success / Trumped, 1 NotTrumped / NotApplicable / verification
failure, 2 Equal or Boundary, 3 budget exhausted, 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .decider import DEFAULT_TOL, Verdict, VerdictKind, decide, sample_curve
from .errors import BudgetExceeded, CatmajError, NotApplicable
from .forge.certify import CatalystCertificate, SearchBudget, certify
from .majorization import catalyzed_majorizes
from .renyi import INFINITE
from .vectors import ProbVec, format_vector, pad, parse_vector

__all__ = ["main", "RunConfig", "EXIT_USAGE", "EXIT_IO"]

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNDECIDED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_IO = 74

RAND_DENOMINATOR = 2**20


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOL
    budget_ms: int = 30_000
    max_catalyst_dim: int = 3
    output_format: str = "text"
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.budget_ms <= 0:
            raise UsageError("--budget-ms must be positive")
        if self.max_catalyst_dim < 0:
            raise UsageError("--max-dim must be nonnegative")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vector(text: str) -> ProbVec:
    try:
        return parse_vector(text)
    except (CatmajError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}: {exc}")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL),
                        help="decision tolerance on the margin curve (default 1e-9)")
    parser.add_argument("--budget-ms", type=int, default=default(30_000),
                        help="wall-clock budget for certify")
    parser.add_argument("--max-dim", type=int, default=default(3),
                        help="largest catalyst dimension for the lattice search")
    parser.add_argument("--format", choices=("text", "json", "csv"), default=default("text"))
    parser.add_argument("--threads", type=int, default=default(None))
    parser.add_argument("--seed", type=int, default=default(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catmaj", description="Catalytic majorization toolkit.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair(p):
        p.add_argument("--x", type=_vector, required=True)
        p.add_argument("--y", type=_vector, required=True)
        _global_flags(p, suppress=True)
        return p

    pair(sub.add_parser("decide", help="decide whether x is trumped by y"))
    pair(sub.add_parser("certify", help="find and verify a catalyst"))
    verify = pair(sub.add_parser("verify", help="exactly check a given catalyst"))
    verify.add_argument("--z", type=_vector, required=True)
    curve = pair(sub.add_parser("curve", help="sample the margin curve to CSV"))
    curve.add_argument("--r-min", type=float, required=True)
    curve.add_argument("--r-max", type=float, required=True)
    curve.add_argument("--samples", type=int, default=181)
    curve.add_argument("--out", default="-", help="output path, '-' for stdout")
    rand = sub.add_parser("rand", help="emit random instance pairs")
    rand.add_argument("--d", type=int, required=True)
    rand.add_argument("--count", type=int, default=1)
    _global_flags(rand, suppress=True)
    return parser


def _config(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        env = os.environ.get("CATMAJ_THREADS")
        try:
            threads = int(env) if env else 1
        except ValueError:
            raise UsageError(f"CATMAJ_THREADS must be an integer, got {env!r}")
    return RunConfig(args.tol, args.budget_ms, args.max_dim, args.format, args.seed, threads)


def _extended(v: Optional[float]):
    """JSON has no infinity literal; encode them as strings."""
    if v is None:
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _emit(cfg: RunConfig, record: dict, text_lines: Sequence[str]) -> None:
    if cfg.output_format == "json":
        print(json.dumps(record, sort_keys=True))
    elif cfg.output_format == "csv":
        keys = sorted(record)
        print(",".join(keys))
        print(",".join(_csv_cell(record[k]) for k in keys))
    else:
        for line in text_lines:
            print(line)


def _csv_cell(v) -> str:
    if isinstance(v, list):
        return " ".join(str(i) for i in v)
    return "" if v is None else str(v)


def _require_normalized(*vecs: ProbVec) -> None:
    for v in vecs:
        if not v.normalized:
            raise UsageError(f"vector {format_vector(v)} does not sum to 1 (sum = {v.total})")


def verdict_record(v: Verdict) -> dict:
    return {
        "kind": v.kind.value,
        "min_margin": _extended(v.min_margin),
        "witness_r": _extended(v.witness_r),
        "window": None if v.window is None else [v.window[0], v.window[1]],
        "note": v.note,
    }


def cmd_decide(args, cfg: RunConfig) -> int:
    _require_normalized(args.x, args.y)
    v = decide(args.x, args.y, cfg.tolerance)
    rec = verdict_record(v)
    lines = [f"kind: {v.kind}", f"min_margin: {v.min_margin:.12g}"]
    if v.witness_r is not None:
        lines.append(f"witness_r: {v.witness_r:.12g}")
    if v.window is not None:
        lines.append(f"window: [{v.window[0]:.12g}, {v.window[1]:.12g}]")
    if v.note:
        lines.append(f"note: {v.note}")
    _emit(cfg, rec, lines)
    return {VerdictKind.TRUMPED: EXIT_OK, VerdictKind.NOT_TRUMPED: EXIT_NO}.get(v.kind, EXIT_UNDECIDED)


def verification_digest(x: ProbVec, y: ProbVec, z: ProbVec, holds: bool) -> str:
    """sha256 over the canonical text of the checked instance and its outcome."""
    text = f"x={format_vector(x)};y={format_vector(y)};z={format_vector(z)};holds={holds}"
    return hashlib.sha256(text.encode()).hexdigest()


def certificate_record(x: ProbVec, y: ProbVec, cert: CatalystCertificate) -> dict:
    d = max(x.dim, y.dim)
    rec = {
        "z": [str(c) for c in cert.z.components],
        "method": cert.method.value,
        "ell": cert.ell,
        "verification": {
            "holds": cert.verification.holds,
            "digest": verification_digest(pad(x, d), pad(y, d), cert.z, cert.verification.holds),
        },
        "params": None,
    }
    if cert.params is not None:
        p = cert.params
        rec["params"] = {"n_plus": p.n_plus, "s_plus": p.s_plus, "n_minus": p.n_minus,
                         "s_minus": p.s_minus, "a": p.a, "ell": p.ell, "delta": p.delta}
    return rec


def cmd_certify(args, cfg: RunConfig) -> int:
    _require_normalized(args.x, args.y)
    budget = SearchBudget(time_limit_s=cfg.budget_ms / 1000.0, brute_force_dim=cfg.max_catalyst_dim)
    try:
        cert = certify(args.x, args.y, budget, cfg.tolerance)
    except NotApplicable as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NO
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    rec = certificate_record(args.x, args.y, cert)
    lines = [f"method: {rec['method']}", f"ell: {rec['ell']}", f"z: {','.join(rec['z'])}",
             f"verified: {rec['verification']['holds']}", f"digest: {rec['verification']['digest']}"]
    _emit(cfg, rec, lines)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    d = max(args.x.dim, args.y.dim)
    x, y = pad(args.x, d), pad(args.y, d)
    report = catalyzed_majorizes(x, y, args.z)
    rec = {"holds": report.holds, "first_violation_index": report.first_violation_index,
           "sums_equal": report.sums_equal}
    if report.holds:
        lines = ["holds"]
    elif not report.sums_equal and report.first_violation_index is None:
        lines = ["fails: totals differ"]
    else:
        lines = [f"fails: violation at k={report.first_violation_index}"]
    _emit(cfg, rec, lines)
    return EXIT_OK if report.holds else EXIT_NO


def format_float(v: float) -> str:
    """Shortest round-trip decimal (at most 17 significant digits)."""
    return repr(float(v))


def curve_csv(samples) -> str:
    rows = ["r,g,flag"]
    for s in samples:
        g = "" if s.flag == INFINITE or not math.isfinite(s.g) else format_float(s.g)
        rows.append(f"{format_float(s.r)},{g},{s.flag}")
    return "\n".join(rows) + "\n"


def cmd_curve(args, cfg: RunConfig) -> int:
    if not args.r_min < args.r_max:
        raise UsageError("need --r-min < --r-max")
    if args.samples < 2:
        raise UsageError("need --samples >= 2")
    text = curve_csv(sample_curve(args.x, args.y, args.r_min, args.r_max, args.samples))
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def random_vector(rng: np.random.Generator, d: int, denominator: int = RAND_DENOMINATOR) -> ProbVec:
    """Normalized exponentials rounded to multiples of 1/denominator, summing to exactly 1."""
    w = rng.exponential(size=d)
    w /= w.sum()
    counts = np.maximum(np.floor(w * denominator).astype(np.int64), 1)
    counts[int(np.argmax(counts))] += denominator - int(counts.sum())
    return ProbVec(Fraction(int(c), denominator) for c in counts)


def cmd_rand(args, cfg: RunConfig) -> int:
    if args.d < 2:
        raise UsageError("--d must be at least 2")
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    rng = np.random.default_rng(cfg.seed)
    for _ in range(args.count):
        x, y = random_vector(rng, args.d), random_vector(rng, args.d)
        if cfg.output_format == "json":
            print(json.dumps({"x": [str(c) for c in x], "y": [str(c) for c in y]}))
        else:
            print(f"{format_vector(x)} {format_vector(y)}")
    return EXIT_OK


COMMANDS = {"decide": cmd_decide, "certify": cmd_certify, "verify": cmd_verify,
            "curve": cmd_curve, "rand": cmd_rand}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"catmaj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatmajError as exc:
        print(f"catmaj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
