"""
Full-size reruns of every reference table (dimension 150, or the 10..80
sweep for the double well). Deselect with `pytest -m "not slow"`.
"""
import sys
import os
sys.path.append(os.getcwd())

import math

import pytest
from loguru import logger

from basis.oscillator import BasisSpec, Parity
from engine.models import IterationConfig
from hamiltonian.potential import double_well, pt_cubic, shift_origin
from observables.energy_shift import expectation_profile, quadratic_response
from runner.presets import PRESETS, expand_preset
from runner.reference_tables import QUADRATIC_RESPONSE, QUADRATIC_RESPONSE_SCALE
from runner.report import build_report
from runner.table_comparator import comparator_for

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("name", list(PRESETS))
def test_preset_reproduces_its_table(name):
    runs = expand_preset(name)
    report = build_report(name, [(r.label, r.params, r.config) for r in runs])
    result = comparator_for(name).compare_report(report)
    for row in result.failures:
        logger.error(f"{row.block}: expected {row.reference.er} {row.reference.ei}, found {row.found}")
    assert result.total > 0
    assert result.match, f"{result.matched}/{result.total} rows reproduced"


def test_double_well_doublet_appears_at_dimension_60():
    runs = expand_preset("double-well", {"lam": [0.3]})
    report = build_report("double-well", [(r.label, r.params, r.config) for r in runs])
    counts = {b.dim: len(b.scan.records) for b in report.blocks}
    assert all(counts[d] == 1 for d in (10, 20, 30, 40, 50))
    assert all(counts[d] == 2 for d in (60, 70, 80))


def test_quadratic_response_of_the_imaginary_cubic():
    spec = BasisSpec(1.0, complex(1, 0.5), Parity.FULL, 150)
    fit = quadratic_response(spec, pt_cubic(-1.0, 0.0), IterationConfig(e0=1.15, max_iters=500))
    expected = float(QUADRATIC_RESPONSE) / QUADRATIC_RESPONSE_SCALE
    assert fit.quadratic.real == pytest.approx(expected, abs=1e-7)
    assert abs(fit.quadratic.imag) < 1e-7
    assert fit.coefficients[0] == pytest.approx(1.15626707198811, abs=1e-9)


def _report(name, overrides):
    runs = expand_preset(name, overrides)
    return build_report(name, [(r.label, r.params, r.config) for r in runs])


def test_rows_tagged_suspect_hold_the_converged_values():
    resonance = _report("triple-well-resonance", {"g": [0.2], "parity": ["even"]}).blocks[0]
    assert resonance.scan.nearest(0.9325).energy.real == pytest.approx(0.93255571582477, abs=1e-11)

    bound = _report("triple-well-bound", {"g": [0.28], "parity": ["odd"]}).blocks[0]
    index = min(range(len(bound.scan.records)), key=lambda i: abs(bound.scan.records[i].energy - 2.6407))
    assert bound.scan.records[index].energy.real == pytest.approx(2.64073480349469, abs=1e-11)
    assert bound.expectations[2][index].real == pytest.approx(4.87068, abs=2e-4)

    sweep = _report("double-well", {"lam": [0.3], "dim": [60]}).blocks[0]
    assert any(abs(r.energy - (-4.1905544608564)) < 1e-10 for r in sweep.scan.records)


def test_shifted_double_well_state_spans_both_wells():
    lam = 0.3
    spec = BasisSpec(1.0, 2.0, Parity.FULL, 80)
    pot = shift_origin(double_well(lam), 1 / lam)
    cfg = IterationConfig(e0=-4.1905545952753, max_iters=500)
    profile = expectation_profile(spec, pot, cfg, delta=1e-6)
    single_well = 1 / (2 * math.sqrt(2))
    assert profile.variance.real > 10 * single_well
