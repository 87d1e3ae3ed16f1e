"""
Comparison of computed eigenvalues against reference table rows
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from runner.reference_tables import REFERENCE_TABLES, ReferenceRow, printed_unit
from runner.report import ReportBlock, ResonanceReport


@dataclass
class RowComparison:
    """One reference row against the nearest computed eigenvalue"""
    reference: ReferenceRow
    found: Optional[complex]
    er_error: float
    ei_error: float
    match: bool
    block: str = ""
    x2_found: Optional[float] = None
    x2_error: Optional[float] = None


@dataclass
class ComparisonResult:
    """Result of comparing computed eigenvalues with a reference table"""
    match: bool
    score: float  # 0.0 to 1.0
    matched: int
    total: int
    rows: List[RowComparison] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def failures(self) -> List[RowComparison]:
        return [r for r in self.rows if not r.match]


class TableComparator:
    """
    Match each reference row to the nearest computed eigenvalue and check
    ER and EI against relative tolerances. `printed_units` > 0 also accepts
    that many units in the last printed digit, which is how rows printed to
    fewer digits are judged. Rows flagged ei_magnitude_only compare |EI|;
    suspect rows (or a suspect <x^2>) are skipped unless include_suspect.
    """

    def __init__(
        self,
        er_rtol: float = 1e-10,
        ei_rtol: float = 1e-8,
        ei_atol: float = 1e-12,
        printed_units: float = 0.0,
        include_suspect: bool = False,
    ):
        self.er_rtol = er_rtol
        self.ei_rtol = ei_rtol
        self.ei_atol = ei_atol
        self.printed_units = printed_units
        self.include_suspect = include_suspect

    def _er_tol(self, row: ReferenceRow) -> float:
        return max(self.er_rtol * abs(row.energy.real), self.printed_units * row.er_unit)

    def _ei_tol(self, row: ReferenceRow) -> float:
        return max(self.ei_rtol * abs(row.energy.imag), self.ei_atol, self.printed_units * row.ei_unit)

    @staticmethod
    def _distance(row: ReferenceRow, z: complex) -> float:
        ref = row.energy
        if row.ei_magnitude_only:
            return abs(complex(z.real, abs(z.imag)) - complex(ref.real, abs(ref.imag)))
        return abs(z - ref)

    def compare_row(
        self,
        row: ReferenceRow,
        energies: Sequence[complex],
        block: str = "",
        x2_values: Optional[Sequence[complex]] = None,
    ) -> RowComparison:
        if not energies:
            return RowComparison(row, None, float("inf"), float("inf"), False, block)
        index = min(range(len(energies)), key=lambda i: self._distance(row, energies[i]))
        found = energies[index]
        ref = row.energy
        er_error = abs(found.real - ref.real)
        if row.ei_magnitude_only:
            ei_error = abs(abs(found.imag) - abs(ref.imag))
        else:
            ei_error = abs(found.imag - ref.imag)
        match = er_error <= self._er_tol(row) and ei_error <= self._ei_tol(row)
        comparison = RowComparison(row, found, er_error, ei_error, match, block)

        # <x^2> is printed to a few figures; judged to one unit in its last digit
        x2_suspect = "suspect_x2" in row.tags and not self.include_suspect
        if row.x2 is not None and x2_values is not None and not x2_suspect:
            comparison.x2_found = x2_values[index].real
            comparison.x2_error = abs(comparison.x2_found - float(row.x2))
            comparison.match = match and comparison.x2_error <= printed_unit(row.x2)
        return comparison

    def compare(self, energies: Sequence[complex], rows: Sequence[ReferenceRow], block: str = "") -> ComparisonResult:
        """
        Args:
            energies: Computed eigenvalues
            rows: Reference rows expected among them

        Returns:
            ComparisonResult with one RowComparison per (non-suspect) row
        """
        rows = [r for r in rows if self.include_suspect or "suspect" not in r.tags]
        compared = [self.compare_row(r, list(energies), block) for r in rows]
        return self._result(compared)

    def compare_report(self, report: ResonanceReport, preset: Optional[str] = None) -> ComparisonResult:
        """Compare every block of a preset report with the rows sharing its parameters and parity."""
        preset = preset or report.name
        table = REFERENCE_TABLES.get(preset, [])
        compared: List[RowComparison] = []
        for block in report.blocks:
            rows = [r for r in table if self._belongs(r, block, match_dim=preset == "double-well")]
            rows = [r for r in rows if self.include_suspect or "suspect" not in r.tags]
            x2_values = block.expectations.get(2)
            compared.extend(self.compare_row(r, block.scan.energies, block.label, x2_values) for r in rows)
        result = self._result(compared)
        result.details["preset"] = preset
        logger.info(f"{preset}: {result.matched}/{result.total} reference rows matched")
        return result

    @staticmethod
    def _belongs(row: ReferenceRow, block: ReportBlock, match_dim: bool) -> bool:
        if row.parity != block.parity:
            return False
        if match_dim and row.dim != block.dim:
            return False
        return all(
            k in block.params and abs(block.params[k] - v) < 1e-9
            for k, v in row.params.items()
        )

    @staticmethod
    def _result(compared: List[RowComparison]) -> ComparisonResult:
        matched = sum(1 for r in compared if r.match)
        total = len(compared)
        worst = max((r.er_error for r in compared), default=0.0)
        return ComparisonResult(
            match=total > 0 and matched == total,
            score=matched / total if total else 0.0,
            matched=matched,
            total=total,
            rows=compared,
            details={"worst_er_error": worst},
        )


# Reference rows are printed to different precision; tolerances follow the printed digits.
PRESET_TOLERANCES: Dict[str, Dict[str, float]] = {
    "triple-well-resonance": {"er_rtol": 1e-10, "ei_rtol": 1e-8},
    "triple-well-bound":     {"er_rtol": 1e-12},
    "pt-cubic":              {"er_rtol": 1e-11, "ei_rtol": 1e-11, "printed_units": 1.0},
    "cubic-oscillator":      {"er_rtol": 2e-11, "ei_rtol": 0.0, "ei_atol": 1e-9},
    "unorthodox":            {"er_rtol": 1e-12, "ei_rtol": 1e-8},
    "double-well":           {"er_rtol": 1e-10},
}


def comparator_for(preset: str) -> TableComparator:
    return TableComparator(**PRESET_TOLERANCES.get(preset, {}))
