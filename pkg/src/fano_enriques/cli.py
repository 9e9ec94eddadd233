"""Command line: ``classify``, ``basis`` and ``germ``.

Exit codes: 0 success (for ``classify``: the accepted list equals the golden
list), 1 computed but mismatched, 2 bad input, 3 output could not be written.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .ambient import DivisorClass, format_monomial, scroll
from .classifier import classify
from .germs.germ import (
    CDV,
    CREPANT_WEIGHTS,
    DEFAULT_SEEDS,
    POINTS,
    SMOOTH,
    point_evidence,
    weighted_discrepancy,
)
from .germs.scan import is_prime
from .involutions import SignInvolution, reference_sigma
from .linear_systems import basis, invariant_ramification_system, parity_decompose
from .report import build_report, to_json, to_markdown, validate

log = logging.getLogger("fano_enriques")

OUTPUT_DIR_ENV = "FANO_ENRIQUES_OUTPUT_DIR"
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    bound: int = 30
    seeds: list[int] = field(default_factory=lambda: list(DEFAULT_SEEDS))
    scan_prime: int = 101
    output: Optional[str] = None
    format: str = "json"
    workers: int = 1
    research: bool = False

    def validate(self) -> None:
        if self.bound < 10:
            raise UsageError(f"--bound must be at least 10, got {self.bound}")
        if not is_prime(self.scan_prime):
            raise UsageError(f"--scan-prime must be prime, got {self.scan_prime}")
        if not self.seeds:
            raise UsageError("--seeds must not be empty")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.format not in ("json", "markdown"):
            raise UsageError(f"unknown format {self.format!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _class_pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("--class takes a,b for the class aM + bL")
    return vals[0], vals[1]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fano-enriques", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="enumerate scrolls and write the table with all candidate reports")
    c.add_argument("--bound", type=int, default=30)
    c.add_argument("--seeds", type=_int_list, default=list(DEFAULT_SEEDS))
    c.add_argument("--scan-prime", type=int, default=101)
    c.add_argument("--output", help="file to write; '-' for stdout")
    c.add_argument("--format", choices=("json", "markdown"), default="json")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--research", action="store_true", help="report a golden mismatch as a warning")

    b = sub.add_parser("basis", help="monomial basis of |aM + bL| on a scroll")
    b.add_argument("d", type=int, nargs=3, metavar="d")
    b.add_argument("--class", dest="cls", type=_class_pair, required=True, metavar="a,b")
    g = b.add_mutually_exclusive_group()
    g.add_argument("--invariant", action="store_true", help="+1 part under t1, x0, x2 -> -t1, -x0, -x2")
    g.add_argument("--involution", help="signs on t0,t1,x0,x1,x2, e.g. +,-,-,+,-")
    b.add_argument("--sign", type=int, choices=(1, -1), default=1)
    b.add_argument("--format", choices=("text", "json"), default="text")

    m = sub.add_parser("germ", help="local double cover along C and its singularity")
    m.add_argument("d1", type=int)
    m.add_argument("d2", type=int)
    m.add_argument("--point", choices=POINTS, default="generic")
    m.add_argument("--seeds", type=_int_list, default=list(DEFAULT_SEEDS))
    m.add_argument("--scan-prime", type=int, default=101)
    m.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _output_path(cfg: RunConfig) -> Optional[Path]:
    if cfg.output == "-":
        return None
    suffix = "json" if cfg.format == "json" else "md"
    if cfg.output:
        path = Path(cfg.output)
        if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
            path = Path(os.environ[OUTPUT_DIR_ENV]) / path
        return path
    base = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    return base / f"classify-bound{cfg.bound}.{suffix}"


def cmd_classify(cfg: RunConfig) -> int:
    cfg.validate()
    run = classify(cfg.bound, cfg.seeds, cfg.scan_prime, cfg.workers)
    report = build_report(run, cfg.seeds, cfg.scan_prime)
    validate(report)
    text = to_json(report) if cfg.format == "json" else to_markdown(report)
    path = _output_path(cfg)
    try:
        if path is None:
            sys.stdout.write(text)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            print(f"wrote {path}")
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    accepted = run.accepted()
    print(f"accepted {len(accepted)}: " + ", ".join("(" + ",".join(map(str, r)) + ")" for r in accepted),
          file=sys.stderr if path is None else sys.stdout)
    if run.matches_golden():
        return EXIT_OK
    if cfg.research:
        print("warning: accepted set differs from the golden list", file=sys.stderr)
        return EXIT_OK
    print("error: accepted set differs from the golden list", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_basis(args) -> int:
    try:
        F = scroll(*args.d)
    except ValueError as exc:
        raise UsageError(str(exc))
    a, b = args.cls
    system = basis(F, DivisorClass.scroll(a, b))
    if args.invariant:
        system = parity_decompose(system, reference_sigma(F), 1)
    elif args.involution:
        try:
            inv = SignInvolution.parse(args.involution)
        except ValueError as exc:
            raise UsageError(str(exc))
        if len(inv.signs) != F.n:
            raise UsageError("an involution needs five signs")
        system = parity_decompose(system, inv, args.sign)
    if args.format == "json":
        print(json.dumps(system.to_json(), indent=1, sort_keys=True))
        return EXIT_OK
    print(f"# F{tuple(args.d)}  class {a}M + ({b})L  h0 = {len(system)}")
    for m in system.monomials():
        print(format_monomial(F, m))
    return EXIT_OK


def cmd_germ(args) -> int:
    if not args.seeds:
        raise UsageError("--seeds must not be empty")
    if not is_prime(args.scan_prime):
        raise UsageError(f"--scan-prime must be prime, got {args.scan_prime}")
    try:
        F = scroll(args.d1, args.d2, 0)
    except ValueError as exc:
        raise UsageError(str(exc))
    D = invariant_ramification_system(F, reference_sigma(F))
    if D.is_empty():
        raise UsageError("the invariant ramification system is empty")
    try:
        ev = point_evidence(D, args.point, args.seeds, args.scan_prime)
    except ValueError as exc:
        # e.g. C is not in the base locus, so the germ is not centred on C
        raise UsageError(f"no double-cover germ along C: {exc}")
    out = ev.to_json()
    if ev.discrepancy is None:
        out["discrepancy"] = {"weights": list(CREPANT_WEIGHTS), "value": weighted_discrepancy(ev.germ, CREPANT_WEIGHTS)}
    if args.format == "json":
        print(json.dumps(out, indent=1, sort_keys=True))
        return EXIT_OK
    print(f"germ   {ev.germ.display()}")
    print(f"chart  {ev.germ.chart}")
    print(f"cdv    {ev.cdv}  (per seed: {', '.join(ev.cdv.per_seed)}; section {ev.cdv.section})")
    print(f"disc   {out['discrepancy']['value']} at weights {','.join(map(str, CREPANT_WEIGHTS))}")
    if ev.scan is not None:
        s = ev.scan
        print(f"scan   F_{s.prime}, seeds {list(s.seeds)}, charts {list(s.charts)}: {'clean' if s.clean else 'SINGULAR'}")
        for line in s.explained:
            print(f"       {line}")
    print(f"status {'ok' if ev.ok else 'not established'} ({ev.evidence})")
    return EXIT_OK if ev.cdv.status in (CDV, SMOOTH) or ev.ok else EXIT_MISMATCH


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "classify":
            cfg = RunConfig(
                "classify",
                args.bound,
                args.seeds,
                args.scan_prime,
                args.output,
                args.format,
                args.workers,
                args.research,
            )
            return cmd_classify(cfg)
        if args.command == "basis":
            return cmd_basis(args)
        return cmd_germ(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
