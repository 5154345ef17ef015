"""Command-line driver: analyze one loop file, bench a corpus, or generate one.

Exit codes for `analyze`: 0 terminating, 1 non-terminating, 2 unsupported,
3 input error.  Decision times cover the decider call only (never parsing
or the oracle) and are reported in milliseconds with microsecond digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .analyzer import decide
from .gen import SHAPES, generate_corpus
from .interpreter import (
    DEFAULT_MAX_STEPS,
    Agreement,
    BoundExhausted,
    CycleDetected,
    TerminatedIn,
    agreement_check,
)
from .model import Unsupported
from .parser import ParseError, parse

MAX_STEPS_ENV = "MONOTERM_MAX_STEPS"


def _default_max_steps() -> int:
    value = os.environ.get(MAX_STEPS_ENV)
    return int(value) if value else DEFAULT_MAX_STEPS


def _oracle_json(agreement: Agreement) -> dict:
    result = agreement.oracle
    if isinstance(result, TerminatedIn):
        outcome, steps = "terminated", result.steps
    elif isinstance(result, CycleDetected):
        outcome, steps = "cycle", result.period
    else:
        assert isinstance(result, BoundExhausted)
        outcome, steps = "bound-exhausted", result.steps
    out = {"outcome": outcome, "steps": steps, "agrees": agreement.ok}
    if agreement.note:
        out["note"] = agreement.note
    if agreement.details:
        out["details"] = agreement.details
    return out


def _analyze_one(path: Path, max_steps: int, oracle_check: bool) -> dict:
    """Analysis record for one file; raises ParseError/OSError on bad input."""
    program = parse(path.read_text())
    start = time.perf_counter()
    verdict = decide(program)
    decision_ms = (time.perf_counter() - start) * 1000.0
    record = {"file": str(path), **verdict.to_json(), "decision_ms": round(decision_ms, 6)}
    if oracle_check and not isinstance(verdict, Unsupported):
        record["oracle"] = _oracle_json(agreement_check(program, verdict, max_steps))
    return record


_VERDICT_LABEL = {"terminating": "TERMINATING", "nonterminating": "NONTERMINATING",
                  "unsupported": "UNSUPPORTED"}


def _print_text(record: dict) -> None:
    line = _VERDICT_LABEL[record["verdict"]]
    if record.get("rule"):
        line += f" rule={record['rule']}"
    if record.get("iterations") is not None:
        line += f" iterations={record['iterations']}"
    print(line)
    if record.get("reason"):
        print(f"reason: {record['reason']}")
    if record.get("witness"):
        print(f"witness: {json.dumps(record['witness'])}")
    print(f"decision_ms: {record['decision_ms']:.3f}")
    oracle = record.get("oracle")
    if oracle:
        agrees = "agrees" if oracle["agrees"] else "DISAGREES"
        note = f" ({oracle['note']})" if oracle.get("note") else ""
        print(f"oracle: {oracle['outcome']} after {oracle['steps']} steps, {agrees}{note}")
        if oracle.get("details"):
            print(f"oracle details: {oracle['details']}")


def _exit_code(verdict_name: str) -> int:
    return {"terminating": 0, "nonterminating": 1, "unsupported": 2}[verdict_name]


def cmd_analyze(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        record = _analyze_one(path, args.max_steps, args.oracle_check)
    except (ParseError, OSError) as err:
        print(f"error: {path}: {err}", file=sys.stderr)
        return 3
    if args.format == "json":
        print(json.dumps(record, indent=2))
    else:
        _print_text(record)
    return _exit_code(record["verdict"])


def _summary_counts(records: list[dict]) -> dict:
    counts = {"T": 0, "NT": 0, "TO": 0, "M": 0}
    for r in records:
        if r["verdict"] == "terminating":
            counts["T"] += 1
        elif r["verdict"] == "nonterminating":
            counts["NT"] += 1
        elif "exceeded" in (r.get("reason") or ""):
            counts["TO"] += 1
        else:
            counts["M"] += 1
    return counts


def cmd_bench(args: argparse.Namespace) -> int:
    directory = Path(args.dir)
    files = sorted(directory.glob("*.loop"))
    records: list[dict] = []
    errors: list[tuple[Path, str]] = []
    for path in files:
        try:
            records.append(_analyze_one(path, args.max_steps, args.oracle_check))
        except (ParseError, OSError) as err:
            errors.append((path, str(err)))
    if args.format == "json":
        print(json.dumps(records, indent=2))
        return 0
    name_width = max([len(p.name) for p in files], default=4)
    header = f"{'file':<{name_width}}  {'verdict':<3}  {'rule':<14}  {'ms':>10}"
    if args.oracle_check:
        header += "  oracle"
    print(header)
    print("-" * len(header))
    short = {"terminating": "T", "nonterminating": "NT", "unsupported": "U"}
    total_ms = 0.0
    for r in records:
        total_ms += r["decision_ms"]
        line = (
            f"{Path(r['file']).name:<{name_width}}  {short[r['verdict']]:<3}  "
            f"{(r.get('rule') or '-'):<14}  {r['decision_ms']:>10.3f}"
        )
        if args.oracle_check:
            oracle = r.get("oracle")
            line += f"  {'pass' if oracle and oracle['agrees'] else 'FAIL' if oracle else '-'}"
        print(line)
    for path, message in errors:
        print(f"{path.name:<{name_width}}  ERROR  {message}")
    counts = _summary_counts(records)
    print(
        f"Total: {len(records)} analyzed, {len(errors)} errors | "
        f"T={counts['T']} NT={counts['NT']} TO={counts['TO']} M={counts['M']} | "
        f"decision time {total_ms:.3f} ms"
    )
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files = generate_corpus(args.seed, args.count, args.shape, args.bound, args.cover_rows)
    for name, text in files:
        (outdir / name).write_text(text)
    print(f"wrote {len(files)} files to {outdir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoterm", description="Termination analysis for monotone linear integer loops"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="decide one loop file")
    analyze.add_argument("file")
    analyze.add_argument("--oracle-check", action="store_true")
    analyze.add_argument("--max-steps", type=int, default=None)
    analyze.add_argument("--format", choices=("text", "json"), default="text")
    analyze.set_defaults(func=cmd_analyze)

    bench = sub.add_parser("bench", help="decide every .loop file in a directory")
    bench.add_argument("dir")
    bench.add_argument("--oracle-check", action="store_true")
    bench.add_argument("--max-steps", type=int, default=None)
    bench.add_argument("--format", choices=("text", "json"), default="text")
    bench.set_defaults(func=cmd_bench)

    gen = sub.add_parser("gen", help="generate a random loop corpus")
    gen.add_argument("outdir")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--shape", choices=SHAPES + ("mix",), default="mix")
    gen.add_argument("--bound", type=int, default=20)
    gen.add_argument("--cover-rows", action="store_true")
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_steps", None) is None and hasattr(args, "max_steps"):
        args.max_steps = _default_max_steps()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
