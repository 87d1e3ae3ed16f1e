"""
Running problem configurations and emitting their reports.

A ResonanceReport holds one block per (configuration, dimension) pair.
emit_table() renders it as csv, json or a fixed-width text table laid out
like the reference tables; the column order is fixed and every float is
written with settings.FLOAT_DIGITS significant digits (json uses the
shortest repr that round-trips, which is equally lossless).
"""
import io
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence

import pandas as pd
from loguru import logger

from basis.oscillator import BasisSpec
from config.settings import settings
from core.errors import PreconditionError
from engine.models import ScanReport
from engine.scanner import dimension_sweep, scan
from hamiltonian.builder import assemble
from hamiltonian.potential import PolynomialPotential
from observables.energy_shift import ShiftProbe, expectation_by_shift
from runner.problem_config import ProblemConfig, config_hash, to_iteration_config, validate_problem

COLUMNS = ["ER", "EI", "iterations", "residual", "persistence", "reference_row", "dim", "block"]
FORMATS = ("csv", "json", "text")


@dataclass
class ReportBlock:
    label: str
    params: Dict[str, float]
    parity: str
    w: complex
    scan: ScanReport
    # power -> one value per scan record
    expectations: Dict[int, List[complex]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.scan.dim


@dataclass
class ResonanceReport:
    name: str
    config_hash: str
    created_at: str
    blocks: List[ReportBlock] = field(default_factory=list)

    @property
    def probe_powers(self) -> List[int]:
        return sorted({p for b in self.blocks for p in b.expectations})

    def block(self, label: str, dim: Optional[int] = None) -> Optional[ReportBlock]:
        for b in self.blocks:
            if b.label == label and (dim is None or b.dim == dim):
                return b
        return None


# ------------------------------------------------------------------ #
# Execution
# ------------------------------------------------------------------ #

def _probe_records(cfg: ProblemConfig, spec: BasisSpec, pot: PolynomialPotential,
                   report: ScanReport) -> Dict[int, List[complex]]:
    expectations = {}
    for probe in cfg.probes:
        shift_probe = ShiftProbe(probe.power, probe.delta)
        expectations[probe.power] = [
            expectation_by_shift(spec, pot, shift_probe, to_iteration_config(cfg, record.energy))
            for record in report.records
        ]
    return expectations


def execute_problem(cfg: ProblemConfig, label: str = "", params: Dict[str, float] = None,
                    workers: Optional[int] = None) -> List[ReportBlock]:
    """Assemble, scan (or sweep dimensions) and probe one configuration."""
    spec, pot, scan_cfg = validate_problem(cfg)
    if workers:
        scan_cfg = replace(scan_cfg, workers=workers)
    label = label or cfg.meta.name

    if cfg.basis.sweep:
        reports = dimension_sweep(spec, pot, cfg.basis.sweep, scan_cfg)
    else:
        reports = {spec.dim: scan(assemble(spec, pot), scan_cfg)}

    blocks = []
    for dim, report in reports.items():
        block = ReportBlock(
            label=label,
            params=dict(params or {}),
            parity=spec.parity.value,
            w=spec.w,
            scan=report,
            expectations=_probe_records(cfg, replace(spec, dim=dim), pot, report),
        )
        logger.info(f"[{label}] ND={dim}: {len(report.records)} eigenvalue(s)")
        blocks.append(block)
    return blocks


def build_report(name: str, runs: Sequence, workers: Optional[int] = None) -> ResonanceReport:
    """runs: (label, params, ProblemConfig) triples, executed in order."""
    runs = list(runs)
    report = ResonanceReport(
        name=name,
        config_hash=config_hash(*(cfg for _, _, cfg in runs)),
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    for label, params, cfg in runs:
        report.blocks.extend(execute_problem(cfg, label, params, workers))
    return report


# ------------------------------------------------------------------ #
# Emission
# ------------------------------------------------------------------ #

def to_frame(report: ResonanceReport) -> pd.DataFrame:
    powers = report.probe_powers
    columns = COLUMNS + [c for p in powers for c in (f"x{p}_re", f"x{p}_im")]
    rows = []
    for block in report.blocks:
        for i, record in enumerate(block.scan.records):
            row = {
                "ER": record.energy.real,
                "EI": record.energy.imag,
                "iterations": record.result.iterations,
                "residual": record.result.residual,
                "persistence": record.persistence,
                "reference_row": record.result.reference_row,
                "dim": block.dim,
                "block": block.label,
            }
            for p in powers:
                value = block.expectations[p][i] if p in block.expectations else complex("nan")
                row[f"x{p}_re"], row[f"x{p}_im"] = value.real, value.imag
            rows.append(row)
    frame = pd.DataFrame(rows, columns=columns)
    return frame.astype({"iterations": int, "persistence": int, "reference_row": int, "dim": int})


def _pair(z: complex) -> List[float]:
    return [z.real, z.imag]


def report_to_dict(report: ResonanceReport) -> dict:
    return {
        "name": report.name,
        "provenance": {"config_hash": report.config_hash, "timestamp": report.created_at},
        "blocks": [
            {
                "label": b.label,
                "params": b.params,
                "dim": b.dim,
                "halfwidth": b.scan.halfwidth,
                "parity": b.parity,
                "w": _pair(b.w),
                "records": [
                    {
                        "er": r.energy.real,
                        "ei": r.energy.imag,
                        "iterations": r.result.iterations,
                        "residual": r.result.residual,
                        "persistence": r.persistence,
                        "reference_row": r.result.reference_row,
                        "hits": r.hits,
                        "expectations": {f"x{p}": _pair(v[i]) for p, v in b.expectations.items()},
                    }
                    for i, r in enumerate(b.scan.records)
                ],
                "failures": [vars(f) for f in b.scan.failures],
                "unconverged_steps": b.scan.unconverged_steps,
            }
            for b in report.blocks
        ],
    }


def _text(report: ResonanceReport) -> str:
    frame = to_frame(report)
    fmt = settings.float_format
    value_columns = [c for c in frame.columns if c not in ("dim", "block")]
    width = settings.FLOAT_DIGITS + 8

    def line(cells):
        return "".join(str(c).ljust(width) for c in cells).rstrip()

    out = [line(value_columns)]
    for (label, dim), rows in frame.groupby(["block", "dim"], sort=False):
        block = report.block(label, dim)
        out.append(f"# {label}  ND={dim}  W=({block.w.real:g},{block.w.imag:g})  parity={block.parity}")
        for _, row in rows.iterrows():
            out.append(line(
                fmt % row[c] if isinstance(row[c], float) else row[c] for c in value_columns
            ))
    return "\n".join(out) + "\n"


def emit_table(report: ResonanceReport, fmt: str = "csv") -> str:
    """Render a report; an empty report gives the header alone."""
    if fmt == "csv":
        buf = io.StringIO()
        to_frame(report).to_csv(buf, index=False, float_format=settings.float_format)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "text":
        return _text(report)
    raise PreconditionError(f"Unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
