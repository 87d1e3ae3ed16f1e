import sys
import os
sys.path.append(os.getcwd())

import numpy as np
import pytest

from engine.models import EigenResult, ScanRecord, ScanReport
from runner.reference_tables import ReferenceRow
from runner.report import ReportBlock, ResonanceReport
from runner.table_comparator import TableComparator, comparator_for

RESONANCE = ReferenceRow("t", {"g": 0.2}, "even", "0.9325571582478", "7.94775543926e-5", ei_magnitude_only=True)


def _record(energy):
    result = EigenResult(complex(energy), 10, 1e-12, np.ones(3, dtype=complex), 1, True)
    return ScanRecord(result, persistence=3, hits=3, first_step=0)


def _block(params, parity, energies, dim=150, x2=None):
    scan = ScanReport(dim=dim, halfwidth=3, grid=[], records=[_record(e) for e in energies])
    return ReportBlock("b", params, parity, complex(1, 15), scan, {2: x2} if x2 else {})


def test_magnitude_only_rows_ignore_the_sign_of_ei():
    comparator = TableComparator()
    for sign in (1, -1):
        energies = [complex(0.9325571582478, sign * 7.94775543926e-5), 3.0]
        assert comparator.compare_row(RESONANCE, energies).match


def test_signed_rows_check_the_sign():
    row = ReferenceRow("t", {}, "full", "0.4848450636272", "-3.60427916939e-3")
    comparator = TableComparator(ei_rtol=1e-8)
    assert comparator.compare_row(row, [complex(0.4848450636272, -3.60427916939e-3)]).match
    assert not comparator.compare_row(row, [complex(0.4848450636272, 3.60427916939e-3)]).match


def test_real_part_outside_tolerance():
    comparison = TableComparator().compare_row(RESONANCE, [complex(0.93255716, 7.94775543926e-5)])
    assert not comparison.match
    assert comparison.er_error == pytest.approx(1.75e-9, rel=1e-2)


def test_printed_units_widen_the_tolerance():
    row = ReferenceRow("t", {}, "full", "1.1562670719881")
    loose = TableComparator(er_rtol=1e-15, printed_units=1)
    assert loose.compare_row(row, [1.15626707198815]).match
    assert not loose.compare_row(row, [1.1562670719884]).match


def test_no_energies_is_a_miss():
    comparison = TableComparator().compare_row(RESONANCE, [])
    assert comparison.found is None and not comparison.match


def test_x2_is_judged_to_its_printed_digit():
    row = ReferenceRow("t", {}, "even", "0.93247629196422", "0", "0.596")
    comparator = TableComparator(er_rtol=1e-12)
    assert comparator.compare_row(row, [0.93247629196422], x2_values=[0.5963]).match
    assert not comparator.compare_row(row, [0.93247629196422], x2_values=[0.5985]).match


def test_suspect_rows_are_skipped_unless_asked():
    rows = [RESONANCE, ReferenceRow("t", {}, "even", "5.0", tags=("suspect",))]
    energies = [complex(0.9325571582478, 7.94775543926e-5)]
    assert TableComparator().compare(energies, rows).total == 1
    assert not TableComparator(include_suspect=True).compare(energies, rows).match


def test_suspect_x2_skips_only_the_expectation_value():
    row = ReferenceRow("t", {}, "odd", "2.64073480349469", "0", "4.817", tags=("suspect_x2",))
    comparator = TableComparator(er_rtol=1e-12)
    assert comparator.compare_row(row, [2.64073480349469], x2_values=[4.87068]).match
    assert not comparator.compare_row(row, [2.6407348], x2_values=[4.87068]).match
    strict = TableComparator(er_rtol=1e-12, include_suspect=True)
    assert not strict.compare_row(row, [2.64073480349469], x2_values=[4.87068]).match


def test_compare_report_selects_rows_by_params_and_parity():
    report = ResonanceReport("triple-well-resonance", "0" * 64, "now", blocks=[
        _block({"g": 0.2}, "even", [complex(0.93255571582477, 7.94775543926e-5),
                                    complex(3.8713869659323, 1.99483314620e-1)]),
        _block({"g": 0.2}, "odd", [complex(2.6156743444473, 1.21030060549e-2)]),
    ])
    result = comparator_for("triple-well-resonance").compare_report(report)
    # the g = 0.2 ground row is tagged suspect
    assert result.total == 2
    assert result.match
    assert result.score == 1.0
    assert result.details["preset"] == "triple-well-resonance"


def test_double_well_rows_are_matched_by_dimension():
    report = ResonanceReport("double-well", "0" * 64, "now", blocks=[
        _block({"lam": 0.3}, "full", [-4.1902095978175], dim=10),
        _block({"lam": 0.3}, "full", [-4.1899127461966, -4.1905544608564], dim=60),
    ])
    result = comparator_for("double-well").compare_report(report)
    assert result.total == 2
    assert result.match
