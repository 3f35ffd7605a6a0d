"""
Command-line front door.

Subcommands:
  genfun    compute closed forms and series for I_r, N_r, E_r, O_r
  shapes    build and print the kernel-shape catalog
  verify    run the binding verification battery (exit 1 on failure)
  table     brute-force count tables, optionally diffed against the
            embedded golden fixtures (a golden diff is binding)
  classify  cell-classification report for a single shape

Configuration precedence is flags > INV3412_* environment variables >
defaults.  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import oracle
from .genfun import DEFAULT_ORDER, GenfunEngine, emit_closed_form, results_to_json
from .kernels import (
    catalog_to_json,
    shape_catalog,
    shape_record,
    validate_catalog,
)
from .perms import ResourceLimitError, check_involution

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

#: Catalog search above this r means scanning I_15 and beyond.
SOFT_R_LIMIT = 7


def _env(name: str, default, cast=int):
    raw = os.environ.get(f"INV3412_{name}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    r_max: int
    order: int
    n_max: int
    threads: int
    format: str
    output: str | None
    style: str

    def as_dict(self) -> dict:
        return {"r_max": self.r_max, "order": self.order, "n_max": self.n_max,
                "threads": self.threads, "format": self.format,
                "style": self.style}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inv3412",
        description="Exact enumeration of involutions by 3412 patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, r_default=2) -> None:
        p.add_argument("--r", type=int, default=_env("R", r_default),
                       help="largest occurrence count r (default %(default)s)")
        p.add_argument("--n", type=int, default=_env("N", 12),
                       help="enumeration bound (default %(default)s)")
        p.add_argument("--order", type=int, default=_env("ORDER", DEFAULT_ORDER),
                       help="series truncation order (default %(default)s)")
        p.add_argument("--threads", type=int,
                       default=_env("THREADS", os.cpu_count() or 1),
                       help="worker threads for enumeration scans")
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default=_env("FORMAT", "text", str))
        p.add_argument("--output", default=_env("OUTPUT", None, str),
                       help="write the artifact to this path")
        p.add_argument("--force", action="store_true",
                       help="override the soft r limit")

    p = sub.add_parser("genfun", help="closed forms and series")
    common(p)
    p.add_argument("--style", choices=("canonical", "paper"),
                   default=_env("STYLE", "canonical", str))
    p.add_argument("--kinds", default="INEO",
                   help="subset of INEO to emit (default all)")

    p = sub.add_parser("shapes", help="kernel-shape catalog")
    common(p)

    p = sub.add_parser("verify", help="binding verification battery")
    common(p)

    p = sub.add_parser("table", help="brute-force count tables")
    common(p, r_default=6)
    p.add_argument("--parity", action="store_true",
                   help="split counts by inversion parity")
    p.add_argument("--golden", action="store_true",
                   help="diff against the embedded golden fixtures")

    p = sub.add_parser("classify", help="cell report for one shape")
    p.add_argument("shape", help="one-line notation, e.g. 3412 or 3,5,1,6,2,4")
    p.add_argument("--format", choices=("text", "json"),
                   default=_env("FORMAT", "text", str))
    p.add_argument("--output", default=_env("OUTPUT", None, str))
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(r_max=args.r, order=args.order, n_max=args.n,
                    threads=max(args.threads, 1), format=args.format,
                    output=args.output, style=getattr(args, "style", "canonical"))
    if cfg.order < cfg.n_max:
        print(f"order {cfg.order} must cover the enumeration bound "
              f"{cfg.n_max}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if cfg.r_max > SOFT_R_LIMIT and not args.force:
        print(f"r={cfg.r_max} exceeds the soft limit {SOFT_R_LIMIT} "
              f"(pass --force to search I_{2 * cfg.r_max + 1} anyway)",
              file=sys.stderr)
        raise SystemExit(EXIT_RESOURCE)
    return cfg


def _deliver(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_genfun(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    kinds = "".join(k for k in args.kinds.upper() if k in "INEO") or "INEO"
    engine = GenfunEngine(cfg.r_max, order=cfg.order, threads=cfg.threads)
    results = [engine.result(kind, r)
               for r in range(cfg.r_max + 1) for kind in kinds]
    if cfg.format == "json":
        _deliver(results_to_json(results, cfg.as_dict()), cfg.output)
        return EXIT_OK
    lines = []
    for g in results:
        lines.append(emit_closed_form(g, cfg.style))
        head = ", ".join(str(c) for c in g.series.coeffs[:13])
        lines.append(f"  series: {head}, ...")
    _deliver("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_shapes(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    records = shape_catalog(cfg.r_max, threads=cfg.threads)
    if cfg.format == "json":
        payload = json.loads(catalog_to_json(records))
        _deliver(oracle.json_document(cfg.as_dict(), {"shapes": payload}),
                 cfg.output)
        return EXIT_OK
    lines = [f"{len(records)} kernel shapes with capacity 1..{cfg.r_max}:"]
    for rec in records:
        shape = " ".join(str(v) for v in rec.shape)
        lines.append(f"  [{shape}]  s={rec.s} c={rec.c} f={rec.f} "
                     f"dd={rec.dd} d={rec.d} parity21={rec.parity21}")
    _deliver("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    engine = GenfunEngine(cfg.r_max, order=max(cfg.order, cfg.n_max),
                          threads=cfg.threads)
    report = oracle.verify_series_vs_brute(engine, cfg.r_max, cfg.n_max,
                                           threads=cfg.threads)
    lines = [report.summary()]
    failures = not report.passed
    audits = validate_catalog(engine.catalog, window=4, n_cap=cfg.n_max)
    bad = [a for a in audits if not a.passed]
    lines.append(f"classifier audit: {len(audits) - len(bad)}/{len(audits)} "
                 f"shapes pass")
    for a in bad:
        failures = True
        lines.append(f"  {a.shape}: " + "; ".join(a.failures[:3]))
    for a in audits:
        for note in a.notes:
            lines.append(f"  note {a.shape}: {note}")
    lines.append("printed-formula diffs (non-binding):")
    for diff in oracle.verify_paper_formulas(engine, range(cfg.r_max + 1)):
        lines.append(f"  {diff}")
    _deliver("\n".join(lines) + "\n", cfg.output)
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    failures = False
    notes = []
    if args.parity:
        parity = oracle.brute_parity_table(cfg.n_max, cfg.r_max,
                                           threads=cfg.threads)
        body_csv = oracle.parity_table_to_csv(parity)
        body_json = oracle.parity_table_to_json(parity, cfg.as_dict())
        if args.golden:
            diffs = oracle.golden_even_diffs(parity)
            notes = [str(d) for d in diffs]
            failures = bool(diffs)
    else:
        table = oracle.brute_table(cfg.n_max, cfg.r_max, threads=cfg.threads)
        body_csv = oracle.table_to_csv(table)
        body_json = oracle.table_to_json(table, cfg.as_dict())
        if args.golden:
            diffs = oracle.golden_count_diffs(table)
            notes = [str(d) for d in diffs]
            failures = bool(diffs)
    if cfg.format == "json":
        _deliver(body_json, cfg.output)
    else:
        _deliver(body_csv, cfg.output)
    if args.golden:
        stream = sys.stderr if failures else sys.stdout
        if notes:
            print("golden fixture diffs (binding):", file=stream)
            for note in notes:
                print(f"  {note}", file=stream)
        else:
            print("golden fixtures: zero diffs", file=stream)
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    raw = args.shape.replace(",", " ").split()
    if len(raw) == 1 and raw[0].isdigit():
        vals = tuple(int(ch) for ch in raw[0])
    else:
        vals = tuple(int(tok) for tok in raw)
    try:
        rec = shape_record(check_involution(vals))
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        _deliver(oracle.json_document({"shape": list(vals)},
                                      {"record": rec.to_dict()}), args.output)
        return EXIT_OK
    lines = [f"shape {' '.join(str(v) for v in vals)}: s={rec.s} c={rec.c} "
             f"f={rec.f} dd={rec.dd} d={rec.d} parity21={rec.parity21}"]
    for m in range(1, rec.s + 1):
        row = " ".join({"infeasible": ".", "free": "F",
                        "diagonal-decreasing": "D",
                        "decreasing": "d"}[rec.grid.label(m, ell)]
                       for ell in range(1, rec.s + 1))
        lines.append(f"  value band {m}: {row}")
    lines.append("  (F free, D diagonal-decreasing, d decreasing, . infeasible)")
    _deliver("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"genfun": cmd_genfun, "shapes": cmd_shapes,
               "verify": cmd_verify, "table": cmd_table,
               "classify": cmd_classify}[args.command]
    try:
        return handler(args)
    except ResourceLimitError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
