"""
resonance-scan command line.

    resonance-scan run configs/triple_well_g020.cfg --format csv
    resonance-scan preset double-well --set lam=0.3 --set dims=10,20,30
    resonance-scan sweep-dims configs/double_well_lam03.cfg --dims 10,20,40,80
    resonance-scan validate configs/pt_cubic.cfg

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from config.settings import settings
from core.errors import ConvergenceError
from core.logging import configure_logging
from runner.failure_classifier import failure_classifier
from runner.presets import PRESETS, expand_preset, parse_overrides
from runner.problem_config import ProblemConfig, config_hash, load_config, validate_problem
from runner.report import FORMATS, ResonanceReport, build_report, emit_table
from runner.report_storage import get_report_storage

_EXTENSIONS = {"csv": "csv", "json": "json", "text": "txt"}


def _with_iteration(cfg: ProblemConfig, tol: Optional[float], max_iters: Optional[int]) -> ProblemConfig:
    updates = {k: v for k, v in (("tol", tol), ("max_iters", max_iters)) if v is not None}
    if not updates:
        return cfg
    return cfg.model_copy(update={"iteration": cfg.iteration.model_copy(update=updates)})


def _parse_dims(raw: str) -> List[int]:
    try:
        return [int(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects comma-separated integers, got {raw!r}")


def write_report(report: ResonanceReport, fmt: str, out: Optional[str] = None) -> Optional[Path]:
    """Emit and store a report; out='-' writes to stdout instead."""
    text = emit_table(report, fmt)
    if out == "-":
        sys.stdout.write(text)
        return None
    if out:
        return get_report_storage().save(Path(out).resolve(), text)
    return get_report_storage().save(f"{report.name}.{_EXTENSIONS[fmt]}", text)


# ------------------------------------------------------------------ #
# Operations
# ------------------------------------------------------------------ #

def run_config(path, fmt: str = "csv", out: Optional[str] = None, tol: Optional[float] = None,
               max_iters: Optional[int] = None, workers: Optional[int] = None,
               dims: Optional[Sequence[int]] = None) -> Tuple[ResonanceReport, Optional[Path]]:
    """Load a config, scan it (optionally over a dimension sweep) and write the report."""
    cfg = _with_iteration(load_config(path), tol, max_iters)
    if dims:
        dims = sorted(set(dims))
        basis = cfg.basis.model_copy(update={"sweep": dims, "dim": dims[-1]})
        cfg = cfg.model_copy(update={"basis": basis})
    name = cfg.meta.name or Path(path).stem
    logger.info(f"Running {name} from {path}")
    report = build_report(name, [(name, {}, cfg)], workers)
    return report, write_report(report, fmt, out)


def run_preset(name: str, overrides: Sequence[str] = (), fmt: str = "csv", out: Optional[str] = None,
               tol: Optional[float] = None, max_iters: Optional[int] = None,
               workers: Optional[int] = None) -> Tuple[ResonanceReport, Optional[Path]]:
    """Expand a named preset with key=value overrides, run every configuration, write one report."""
    parsed = parse_overrides(overrides)
    if tol is not None:
        parsed["tol"] = [tol]
    if max_iters is not None:
        parsed["max_iters"] = [max_iters]
    runs = expand_preset(name, parsed)
    report = build_report(name, [(r.label, r.params, r.config) for r in runs], workers)
    return report, write_report(report, fmt, out)


# ------------------------------------------------------------------ #
# Command handlers
# ------------------------------------------------------------------ #

def _cmd_run(args) -> int:
    report, path = run_config(args.config, args.format, args.out, args.tol, args.max_iters, args.workers)
    return _finish(report, path)


def _cmd_sweep(args) -> int:
    report, path = run_config(args.config, args.format, args.out, args.tol, args.max_iters, args.workers,
                              dims=args.dims)
    return _finish(report, path)


def _cmd_preset(args) -> int:
    report, path = run_preset(args.name, args.set, args.format, args.out, args.tol, args.max_iters,
                              args.workers)
    return _finish(report, path)


def _cmd_validate(args) -> int:
    cfg = load_config(args.config)
    spec, pot, _ = validate_problem(cfg)
    logger.success(
        f"{args.config}: valid (dim={spec.dim}, parity={spec.parity.value}, degree={pot.degree}, "
        f"hash={config_hash(cfg)[:12]})"
    )
    return 0


def _summarize(report: ResonanceReport, path: Optional[Path]) -> None:
    count = sum(len(b.scan.records) for b in report.blocks)
    failures = sum(len(b.scan.failures) for b in report.blocks)
    where = path if path is not None else "stdout"
    logger.info(f"{report.name}: {count} eigenvalue(s) in {len(report.blocks)} block(s), "
                f"{failures} step failure(s); report written to {where}")


def _finish(report: ResonanceReport, path: Optional[Path]) -> int:
    """Summarize a written report; a block where no grid step converged is a numerical failure."""
    _summarize(report, path)
    stalled = [f"{b.label} (ND={b.dim})" for b in report.blocks if b.scan.exhausted]
    if stalled:
        raise ConvergenceError(f"no grid step converged in {', '.join(stalled)}")
    return 0


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="csv", help="Report format (default: csv).")
    p.add_argument("--out", default=None,
                   help=f"Report path; '-' for stdout (default: {settings.REPORT_DIR}/<name>.<ext>).")
    p.add_argument("--tol", type=float, default=None, help="Override the convergence tolerance.")
    p.add_argument("--max-iters", type=int, default=None, help="Override the iteration cap.")
    p.add_argument("--workers", type=int, default=None,
                   help=f"Threads per scan (default: {settings.SCAN_WORKERS}).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resonance-scan",
        description="Bound-state and resonance energies by banded Gaussian-elimination inverse iteration.",
    )
    parser.add_argument("--log-level", default=None, help=f"Log level (default: {settings.LOG_LEVEL}).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="Run a .cfg problem file.")
    p.add_argument("config", type=Path, help="Path to the .cfg file.")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("preset", help="Run a named table preset.")
    p.add_argument("name", help=f"One of: {', '.join(PRESETS)}.")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="Override a preset parameter; comma lists allowed (e.g. g=0.2,0.24).")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_preset)

    p = sub.add_parser("sweep-dims", help="Rescan a .cfg problem at several matrix dimensions.")
    p.add_argument("config", type=Path, help="Path to the .cfg file.")
    p.add_argument("--dims", type=_parse_dims, required=True, help="Comma-separated dimensions.")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("validate", help="Check a .cfg file without running it.")
    p.add_argument("config", type=Path, help="Path to the .cfg file.")
    p.set_defaults(handler=_cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except Exception as exc:
        result = failure_classifier.classify(exc, context=args.command)
        logger.error(f"{result['error_category']} ({result['error_type']}): {result['error_message']}")
        logger.info(f"Suggested fix: {result['suggested_fix']}")
        return result["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
