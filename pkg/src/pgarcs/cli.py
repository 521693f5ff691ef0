"""Command-line driver: search, verify, spectrum, tables, oracle.

Exit codes are stable across subcommands:

* 0 — success (for ``verify``: the file holds a complete arc),
* 1 — a verification answered "no" (not an arc / not complete / dataset
  audit found discrepancies),
* 2 — usage or file-format errors,
* 3 — search budget exhausted without a result.

Every run that writes an arc certificate also writes a companion
``<out>.run`` record (stable field order, one ``key: value`` per line)
echoing the command, the field, the configuration, the outcome and
timestamps, and re-verifies the persisted certificate before reporting
success.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__
from .arc import (CertificateError, certificate_points, format_certificate,
                  max_arc_size, parse_certificate, verify_certificate)
from .dataset import row_for
from .gf import build_field, factor_prime_power
from .metrics import (bound_regions, check_dataset, compute_metrics,
                      emit_plot_data, spectrum_ceiling)
from .plane import Plane, build_plane
from .search import (BudgetExhausted, SearchConfig, greedy_min, oracle_min,
                     spectrum_search)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_EMIT_KINDS = {"d075": "log_ratio_075", "delta": "gap", "pct": "gap_pct"}


class UsageError(Exception):
    pass


def _utc_stamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _build_plane_from_args(args: argparse.Namespace) -> Plane:
    try:
        p, h = factor_prime_power(args.q)
    except ValueError as e:
        raise UsageError(str(e))
    poly = None
    if getattr(args, "poly", None):
        try:
            poly = [int(c) for c in args.poly.split(",")]
        except ValueError:
            raise UsageError(f"--poly must be comma-separated integers, got {args.poly!r}")
    try:
        field = build_field(p, h, poly)
        return build_plane(field)
    except ValueError as e:
        raise UsageError(str(e))


def _search_config(args: argparse.Namespace) -> SearchConfig:
    cfg = SearchConfig(
        master_seed=args.seed,
        restarts=args.restarts,
        time_budget=args.budget_secs,
        candidate_sample=args.candidate_sample,
        tie_top_k=args.tie_top_k,
        start_size=args.start_size,
    )
    try:
        cfg.validate()
    except ValueError as e:
        raise UsageError(str(e))
    return cfg


def _config_lines(cfg: SearchConfig, workers: int) -> list[tuple[str, str]]:
    sample = "auto" if cfg.candidate_sample is None else str(cfg.candidate_sample)
    return [
        ("seed", str(cfg.master_seed)),
        ("restarts", str(cfg.restarts)),
        ("budget_secs", str(cfg.time_budget)),
        ("candidate_sample", sample),
        ("tie_top_k", str(cfg.tie_top_k)),
        ("start_size", str(cfg.start_size)),
        ("workers", str(workers)),
    ]


def _write_run_record(path: Path, command: str, plane: Plane,
                      fields: list[tuple[str, str]], started: str) -> None:
    lines = [("command", command),
             ("field", plane.field.describe()),
             ("q", str(plane.q))]
    lines += fields
    lines += [("started", started),
              ("finished", _utc_stamp()),
              ("version", __version__)]
    path.write_text("".join(f"{k}: {v}\n" for k, v in lines))


def _persist_and_reverify(plane: Plane, points: list[int], out: Path) -> None:
    """Write the certificate, then reload and re-verify it from the file."""
    out.write_text(format_certificate(plane, points))
    field, triples = parse_certificate(out.read_text())
    pts = certificate_points(plane, triples)
    report = verify_certificate(plane, pts)
    if not (report.is_arc and report.is_complete):
        raise RuntimeError(f"persisted certificate failed re-verification: {report}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_search(args: argparse.Namespace) -> int:
    plane = _build_plane_from_args(args)
    cfg = _search_config(args)
    started = _utc_stamp()
    try:
        outcome = greedy_min(plane, cfg, workers=args.workers)
    except BudgetExhausted as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    points = sorted(outcome.best_arc)
    cert = format_certificate(plane, points)
    if args.out is None:
        sys.stdout.write(cert)
    else:
        out = Path(args.out)
        _persist_and_reverify(plane, points, out)
        _write_run_record(
            out.with_name(out.name + ".run"), _echo(args), plane,
            _config_lines(cfg, args.workers) + [
                ("outcome", f"complete arc of size {outcome.best_size}"),
                ("restarts_used", str(outcome.restarts_used)),
                ("size_log", ",".join(str(s) for s in outcome.size_log)),
                ("certificate", out.name),
            ], started)
        print(f"complete arc of size {outcome.best_size} in PG(2,{plane.q}) "
              f"-> {out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    path = Path(args.path)
    try:
        text = path.read_text()
    except OSError as e:
        print(f"cannot read {path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        field, triples = parse_certificate(text)
    except CertificateError as e:
        print(f"{path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    plane = build_plane(field)
    report = verify_certificate(plane, certificate_points(plane, triples))
    print(f"is_arc: {str(report.is_arc).lower()}")
    print(f"is_complete: {str(report.is_complete).lower()}")
    print(f"size: {report.size}")
    if report.first_violation:
        print(f"violation: {report.first_violation}")
    if report.uncovered:
        print(f"uncovered: {report.uncovered}")
    return EXIT_OK if (report.is_arc and report.is_complete) else EXIT_NEGATIVE


def cmd_spectrum(args: argparse.Namespace) -> int:
    plane = _build_plane_from_args(args)
    cfg = _search_config(args)
    q = plane.q
    kmax = args.kmax if args.kmax is not None else spectrum_ceiling(q)
    if not 3 <= kmax <= max_arc_size(q):
        raise UsageError(f"--kmax {kmax} out of range [3, {max_arc_size(q)}]")
    started = _utc_stamp()
    if args.kmin is not None:
        kmin = args.kmin
    else:
        try:
            kmin = greedy_min(plane, cfg, workers=args.workers).best_size
        except BudgetExhausted as e:
            print(f"budget exhausted: {e}", file=sys.stderr)
            return EXIT_BUDGET
    if not 3 <= kmin <= kmax:
        raise UsageError(f"--kmin {kmin} out of range [3, {kmax}]")

    out_dir = Path(args.out) if args.out else Path(f"spectrum-q{q}")
    out_dir.mkdir(parents=True, exist_ok=True)
    achieved: list[int] = []
    missed: list[int] = []
    for k in range(kmin, kmax + 1):
        outcome = spectrum_search(plane, k, cfg, workers=args.workers)
        if outcome is None:
            missed.append(k)
            print(f"k={k}: not found in {cfg.restarts} attempts")
        else:
            achieved.append(k)
            cert_path = out_dir / f"k{k:03d}.arc"
            _persist_and_reverify(plane, sorted(outcome.best_arc), cert_path)
            print(f"k={k}: complete arc -> {cert_path}")
    _write_run_record(
        out_dir / "spectrum.run", _echo(args), plane,
        _config_lines(cfg, args.workers) + [
            ("kmin", str(kmin)),
            ("kmax", str(kmax)),
            ("achieved", ",".join(map(str, achieved)) or "-"),
            ("missed", ",".join(map(str, missed)) or "-"),
        ], started)
    print(f"achieved {len(achieved)}/{kmax - kmin + 1} sizes in [{kmin}, {kmax}]")
    return EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    if args.check:
        report = check_dataset()
        print(f"rows checked: {report.rows_checked}")
        for m in report.mismatches:
            print(f"mismatch q={m.q} {m.column}: published={m.published} "
                  f"computed={m.computed}")
        for v in report.violations:
            print(f"range violation q={v.q}: {v.claim}, value={v.value!r}")
        for q in report.blank_slack_flags:
            print(f"blank slack_45 flag: q={q} sits below 4.5*sqrt(q)")
        if report.ok:
            print("dataset consistent")
            return EXIT_OK
        n = (len(report.mismatches) + len(report.violations)
             + len(report.blank_slack_flags))
        print(f"{n} discrepancies")
        return EXIT_NEGATIVE
    if args.emit is not None:
        csv = emit_plot_data(_EMIT_KINDS[args.emit])
        if args.out is None:
            sys.stdout.write(csv)
        else:
            Path(args.out).write_text(csv)
        return EXIT_OK
    # --row
    try:
        rec = row_for(args.row)
    except KeyError as e:
        raise UsageError(str(e))
    m = compute_metrics(rec.q, rec.t_bar)
    for name in ("q", "t_bar", "slack_45", "slack_5", "sqrt_ratio",
                 "log_ratio_1", "log_ratio_half", "log_ratio_075",
                 "predicted", "gap", "gap_pct"):
        v = getattr(m, name)
        print(f"{name}: {v!r}" if isinstance(v, float) else f"{name}: {v}")
    for claim in bound_regions(rec.q, rec.t_bar):
        status = "holds" if claim.holds else "fails"
        scope = "in stated region" if claim.in_region else "outside stated region"
        print(f"bound {claim.label}: {status}, {scope}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    plane = _build_plane_from_args(args)
    started = _utc_stamp()
    try:
        size, witness = oracle_min(plane)
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    print(f"minimum complete arc size in PG(2,{plane.q}): {size}")
    points = sorted(witness)
    if args.out is None:
        sys.stdout.write(format_certificate(plane, points))
    else:
        out = Path(args.out)
        _persist_and_reverify(plane, points, out)
        _write_run_record(
            out.with_name(out.name + ".run"), _echo(args), plane, [
                ("outcome", f"exact minimum {size}"),
                ("certificate", out.name),
            ], started)
        print(f"witness -> {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _echo(args: argparse.Namespace) -> str:
    return " ".join(args.argv_echo)


def _add_field_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--q", type=int, required=True, help="plane order (prime power)")
    sub.add_argument("--poly", type=str, default=None,
                     help="irreducible polynomial c0,c1,...,ch (h+1 comma-separated "
                          "coefficients, constant term first)")


def _add_search_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="master seed")
    sub.add_argument("--restarts", type=int, default=32,
                     help="independent restarts (spectrum: attempts per size)")
    sub.add_argument("--budget-secs", type=float, default=0.0,
                     help="wall-clock budget, 0 = unlimited")
    sub.add_argument("--candidate-sample", type=int, default=None,
                     help="candidates scored per step (0 = all; default auto)")
    sub.add_argument("--tie-top-k", type=int, default=5,
                     help="random pick among the best k scored candidates")
    sub.add_argument("--start-size", type=int, default=2,
                     help="random points before scored growth begins")
    sub.add_argument("--workers", type=int, default=max(1, os.cpu_count() or 1),
                     help="parallel restart workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgarcs",
        description="Small complete arcs in the projective planes PG(2,q): "
                    "search, certify, and recompute the reference tables.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("search", help="randomized greedy search for a small complete arc")
    _add_field_flags(s)
    _add_search_flags(s)
    s.add_argument("--out", type=str, default=None, help="certificate file path")
    s.set_defaults(func=cmd_search)

    s = subs.add_parser("verify", help="verify an arc certificate file")
    s.add_argument("path", type=str, help="certificate file")
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("spectrum", help="complete arcs of every size in a range")
    _add_field_flags(s)
    _add_search_flags(s)
    s.add_argument("--kmin", type=int, default=None,
                   help="smallest target size (default: greedy best)")
    s.add_argument("--kmax", type=int, default=None,
                   help="largest target size (default: the known spectrum ceiling)")
    s.add_argument("--out", type=str, default=None,
                   help="output directory (default spectrum-q<q>)")
    s.set_defaults(func=cmd_spectrum)

    s = subs.add_parser("tables", help="reference dataset: audit, plot series, single row")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="store_true",
                   help="recompute all derived columns and audit the range claims")
    g.add_argument("--emit", choices=sorted(_EMIT_KINDS), default=None,
                   help="write one plot series as CSV")
    g.add_argument("--row", type=int, default=None,
                   help="print every metric for one dataset order")
    s.add_argument("--out", type=str, default=None, help="CSV output path (with --emit)")
    s.set_defaults(func=cmd_tables)

    s = subs.add_parser("oracle", help="exhaustive exact minimum at tiny orders")
    _add_field_flags(s)
    s.add_argument("--out", type=str, default=None, help="witness certificate path")
    s.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv_echo = [parser.prog] + list(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
