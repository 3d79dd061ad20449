"""Command-line entry point: ``supernatural <command> ...``.

Exit codes: 0 success, 2 usage error, 3 expression syntax error, 4 value
outside the positive integers, 5 evaluation budget exceeded, 6 constant
function where a non-constant one is required, 7 not a polynomial,
8 expression too large for exact length search, 9 search exhausted.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass

from . import report
from .algebra import Differ, enumerate_exprs, normalize, semantic_equal, syntactic_length
from .arith import EFFORTS, factor, is_prime
from .classify import Constant, classify
from .conjecture import (
    exponential_certificate,
    exponential_expr,
    fermat_like,
    infinitude_samples,
    polynomial_certificate,
    scan_family,
    smallest_composite_witness,
)
from .errors import BudgetExceeded, NaturalError, NotIncreasing, SearchExhausted
from .expr import DEFAULT_MAX_BITS, EvalBudget, evaluate, parse, render

log = logging.getLogger("supernatural")

# sample non-polynomial functions for the repro witness table
REPRO_FUNCTIONS = (
    "2^2^n+1",
    "2^2^n+93",
    "2^2^n+15",
    "n^n+n+1",
    "7^n+6",
    "2^n+1",
    "3^3^n+1",
    "4^n+3",
    "6^n+1",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    budget_bits: int = DEFAULT_MAX_BITS
    effort: str = "standard"
    output_format: str = "table"
    jobs: int = 1

    @property
    def budget(self) -> EvalBudget:
        return EvalBudget(self.budget_bits)

    @classmethod
    def from_args(cls, args):
        return cls(args.command, args.seed, args.budget_bits, args.effort,
                   args.format, getattr(args, "jobs", 1))


def _global_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0, help="factoring seed (default 0)")
    g.add_argument("--budget-bits", type=int, default=DEFAULT_MAX_BITS,
                   help=f"max bit length of any intermediate value (default {DEFAULT_MAX_BITS})")
    g.add_argument("--effort", choices=sorted(EFFORTS), default="standard",
                   help="factoring effort (default standard)")
    g.add_argument("--format", choices=("table", "csv", "json"), default="table")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="supernatural",
        description="Natural functions built from n, constants, +, * and ^: "
                    "evaluation, classification and composite-witness search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate f(n)")
    p.add_argument("expr")
    p.add_argument("-n", type=_positive, required=True)

    p = sub.add_parser("classify", parents=[common], help="constant or strictly increasing")
    p.add_argument("expr")

    p = sub.add_parser("normalize", parents=[common], help="best-effort normal form")
    p.add_argument("expr")

    p = sub.add_parser("equal", parents=[common], help="compare two expressions on sample points")
    p.add_argument("expr")
    p.add_argument("other")
    p.add_argument("--points", default="1-8", help="comma list and/or ranges, e.g. 1-8,20")

    p = sub.add_parser("length", parents=[common], help="syntactic length and witness word")
    p.add_argument("expr")
    p.add_argument("--max-ops", type=int, default=12)

    p = sub.add_parser("witness", parents=[common], help="smallest n with f(n) not prime")
    p.add_argument("expr")
    p.add_argument("--n-max", type=_positive, default=16)

    p = sub.add_parser("certify-poly", parents=[common], help="polynomial congruence witness")
    p.add_argument("expr")

    p = sub.add_parser("certify-exp", parents=[common], help="witness for a^n+b")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)

    p = sub.add_parser("scan", parents=[common], help="scan n -> 2^2^n+c over odd c")
    p.add_argument("--c-from", type=_positive, default=1)
    p.add_argument("--c-to", type=_positive, required=True)
    p.add_argument("--n-check", type=_positive, default=7)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--summary", action="store_true",
                   help="append counts of rows by primes_before to stderr")

    p = sub.add_parser("infinitude", parents=[common], help="witnesses at increasing indices")
    p.add_argument("expr")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--per-shift-n-max", type=_positive, default=64)

    p = sub.add_parser("enumerate", parents=[common], help="list natural expressions")
    p.add_argument("--max-ops", type=int, required=True)
    p.add_argument("--consts", default="1,2", help="comma-separated constants (default 1,2)")
    p.add_argument("--witness-all", action="store_true",
                   help="run the witness search on every non-constant expression")
    p.add_argument("--n-max", type=_positive, default=8)

    p = sub.add_parser("repro-paper", parents=[common],
                       help="write the witness table, the c=93 table and the c-scan as CSV")
    p.add_argument("--out", default="repro")
    p.add_argument("--c-to", type=_positive, default=2601)
    p.add_argument("--n-check", type=_positive, default=7)
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


def _write(text):
    sys.stdout.write(text)


def cmd_eval(args, cfg):
    e = parse(args.expr)
    value = evaluate(e, args.n, cfg.budget)
    if cfg.output_format == "table":
        _write(f"{value}\n")
    else:
        _write(report.emit([{"function": render(e), "n": args.n, "value": value}],
                           cfg.output_format))


def cmd_classify(args, cfg):
    e = parse(args.expr)
    verdict = classify(e, cfg.budget)
    if cfg.output_format == "table":
        _write(f"{verdict}\n")
        return
    rec = {
        "function": render(e),
        "verdict": "constant" if isinstance(verdict, Constant) else "strictly_increasing",
        "value": verdict.value if isinstance(verdict, Constant) else None,
    }
    _write(report.emit([rec], cfg.output_format))


def cmd_normalize(args, cfg):
    e = parse(args.expr)
    form = render(normalize(e))
    if cfg.output_format == "table":
        _write(f"{form}\n")
    else:
        _write(report.emit([{"function": render(e), "normal_form": form}], cfg.output_format))


def _points(text):
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        out.extend(range(int(lo), int(hi or lo) + 1))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"--points needs integers >= 1, got {text!r}")
    return out


def cmd_equal(args, cfg):
    e1, e2 = parse(args.expr), parse(args.other)
    verdict = semantic_equal(e1, e2, _points(args.points), cfg.budget)
    if isinstance(verdict, Differ):
        rec = {"verdict": "differ", "n": verdict.n, "left": verdict.left, "right": verdict.right}
        text = f"differ at n={verdict.n}: {verdict.left} != {verdict.right}\n"
    else:
        rec = {"verdict": "agree_on_samples", "n": None, "left": None, "right": None}
        text = f"agree on {len(verdict.points)} sample points\n"
    if cfg.output_format == "table":
        _write(text)
    else:
        _write(report.emit([{"function": render(e1), "other": render(e2), **rec}],
                           cfg.output_format))


def cmd_length(args, cfg):
    e = parse(args.expr)
    result = syntactic_length(e, args.max_ops)
    if cfg.output_format == "table":
        _write(f"{result.length} {' '.join(result.word)}".rstrip() + "\n")
    else:
        _write(report.emit([{"function": render(e), "length": result.length,
                             "word": " ".join(result.word)}], cfg.output_format))


def cmd_witness(args, cfg):
    e = parse(args.expr)
    result = smallest_composite_witness(e, args.n_max, cfg.budget, cfg.effort, cfg.seed)
    _write(report.emit([report.witness_record(render(e), result)], cfg.output_format,
                       report.REPORT_FIELDS))


def cmd_certify_poly(args, cfg):
    e = parse(args.expr)
    w = polynomial_certificate(e, cfg.budget, cfg.effort, cfg.seed)
    _write(report.emit([report.certificate_record(render(e), w)], cfg.output_format))


def cmd_certify_exp(args, cfg):
    w = exponential_certificate(args.a, args.b, cfg.effort, cfg.seed)
    text = render(exponential_expr(args.a, args.b))
    _write(report.emit([report.certificate_record(text, w)], cfg.output_format))


def _scan_summary(rows):
    counts = {}
    for row in rows:
        counts[row.primes_before] = counts.get(row.primes_before, 0) + 1
    return counts


def cmd_scan(args, cfg):
    rows = scan_family(args.c_from, args.c_to, args.n_check, cfg.budget, cfg.effort,
                       cfg.seed, cfg.jobs)
    _write(report.emit([report.scan_record(r) for r in rows], cfg.output_format,
                       report.REPORT_FIELDS))
    if args.summary:
        counts = _scan_summary(rows)
        at_least_4 = sum(v for k, v in counts.items() if k >= 4)
        for k in sorted(counts, reverse=True):
            print(f"primes_before={k}: {counts[k]}", file=sys.stderr)
        print(f"primes_before>=4: {at_least_4}", file=sys.stderr)


def cmd_infinitude(args, cfg):
    e = parse(args.expr)
    fields = ("function", "index", "value", "factorization")
    try:
        found = infinitude_samples(e, args.count, args.per_shift_n_max, cfg.budget,
                                   cfg.effort, cfg.seed)
    except SearchExhausted as exc:
        found = exc.partial
        _write(report.emit(_infinitude_records(e, found), cfg.output_format, fields))
        raise
    _write(report.emit(_infinitude_records(e, found), cfg.output_format, fields))


def _infinitude_records(e, found):
    text = render(e)
    return [{"function": text, "index": w.index, "value": w.value,
             "factorization": w.factorization.render()} for w in found]


def cmd_enumerate(args, cfg):
    consts = [int(c) for c in args.consts.split(",") if c.strip()]
    if not consts or min(consts) < 1:
        raise argparse.ArgumentTypeError("--consts needs integers >= 1")
    records = []
    for e in enumerate_exprs(args.max_ops, consts):
        text = render(e)
        if not args.witness_all:
            records.append({"function": text})
            continue
        try:
            result = smallest_composite_witness(e, args.n_max, cfg.budget, cfg.effort, cfg.seed)
        except NotIncreasing:
            continue
        except BudgetExceeded as exc:
            records.append({"function": text, "smallest_composite_n": None, "value": None,
                            "factorization": None, "primes_before": exc.index - 1})
            continue
        records.append(report.witness_record(text, result))
    fields = report.REPORT_FIELDS if args.witness_all else ("function",)
    _write(report.emit(records, cfg.output_format, fields))


def cmd_repro_paper(args, cfg):
    os.makedirs(args.out, exist_ok=True)
    budget, effort, seed = cfg.budget, cfg.effort, cfg.seed

    records = []
    for text in REPRO_FUNCTIONS:
        e = parse(text)
        records.append(report.witness_record(
            render(e), smallest_composite_witness(e, 16, budget, effort, seed)))
    _save(args.out, "witnesses.csv", report.to_csv(records, report.REPORT_FIELDS))

    rows = scan_family(1, args.c_to, args.n_check, budget, effort, seed, cfg.jobs)
    _save(args.out, "kscan.csv",
          report.to_csv([report.scan_record(r) for r in rows], report.REPORT_FIELDS))

    best = [93] + sorted(
        int(r.function.rsplit("+", 1)[1]) for r in rows
        if r.primes_before >= 6 and r.function != render(fermat_like(93))
    )
    for c in best:
        _save(args.out, f"fermat_c{c}.csv", per_index_table(c, args.n_check, budget, effort, seed))


def per_index_table(c, n_max, budget, effort, seed):
    """One line per n = 1..n_max with f(n) = 2^2^n + c, its verdict and factorization."""
    e = fermat_like(c)
    records = []
    for n in range(1, n_max + 1):
        value = evaluate(e, n, budget)
        verdict = is_prime(value)
        records.append({
            "function": render(e),
            "n": n,
            "value": value,
            "verdict": verdict.kind.value,
            "factorization": None if verdict.is_prime_like else factor(value, effort, seed).render(),
        })
    return report.to_csv(records)


def _save(directory, name, text):
    path = os.path.join(directory, name)
    with open(path, "w") as fh:
        fh.write(text)
    print(path, file=sys.stderr)


COMMANDS = {
    "eval": cmd_eval,
    "classify": cmd_classify,
    "normalize": cmd_normalize,
    "equal": cmd_equal,
    "length": cmd_length,
    "witness": cmd_witness,
    "certify-poly": cmd_certify_poly,
    "certify-exp": cmd_certify_exp,
    "scan": cmd_scan,
    "infinitude": cmd_infinitude,
    "enumerate": cmd_enumerate,
    "repro-paper": cmd_repro_paper,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig.from_args(args)
    try:
        COMMANDS[args.command](args, cfg)
    except NaturalError as exc:
        print(f"supernatural {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except argparse.ArgumentTypeError as exc:
        print(f"supernatural {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
