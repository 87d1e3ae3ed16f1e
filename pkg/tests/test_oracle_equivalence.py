import sys
import os
sys.path.append(os.getcwd())

import numpy as np
import pytest

from engine.scanner import scan
from hamiltonian.banded import to_dense
from hamiltonian.builder import assemble
from runner.presets import PRESETS, expand_preset
from runner.problem_config import validate_problem

RUNS = [(name, run) for name in PRESETS for run in expand_preset(name, {"dim": [60]})]


@pytest.mark.parametrize("name", list(PRESETS))
def test_every_preset_retains_something_at_dimension_60(name):
    retained = 0
    for run in (r for n, r in RUNS if n == name):
        spec, pot, scan_cfg = validate_problem(run.config)
        retained += len(scan(assemble(spec, pot), scan_cfg).records)
    assert retained, f"{name}: nothing retained"


@pytest.mark.parametrize("name,run", RUNS, ids=[f"{n}[{r.label}]" for n, r in RUNS])
def test_scan_eigenvalues_are_dense_eigenvalues(name, run):
    spec, pot, scan_cfg = validate_problem(run.config)
    m = assemble(spec, pot)
    report = scan(m, scan_cfg)

    eigs = np.linalg.eigvals(to_dense(m))
    for record in report.records:
        assert record.result.converged
        assert record.result.residual <= 1e-8 * m.norm_inf()
        distance = np.min(np.abs(eigs - record.energy))
        assert distance <= 1e-9 * max(1.0, abs(record.energy)), f"{run.label}: {record.energy}"
