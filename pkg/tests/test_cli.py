import sys
import os
sys.path.append(os.getcwd())

import io
import json
from pathlib import Path

import pandas as pd
import pytest
from loguru import logger

from runner.cli import build_parser, main

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
HARMONIC = str(CONFIG_DIR / "harmonic.cfg")


@pytest.fixture(autouse=True)
def restore_logging():
    # main() points loguru at the captured stderr; hand it back afterwards
    yield
    logger.remove()
    logger.add(sys.__stderr__)


def test_run_to_stdout(capsys):
    assert main(["run", HARMONIC, "--format", "csv", "--out", "-"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["ER"].tolist() == [1.0, 3.0, 5.0]


def test_run_to_file(tmp_path):
    out = tmp_path / "harmonic.json"
    assert main(["run", HARMONIC, "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert [r["er"] for r in data["blocks"][0]["records"]] == [1.0, 3.0, 5.0]


def test_sweep_dims(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep-dims", HARMONIC, "--dims", "6,4", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert frame["dim"].tolist() == [4, 4, 4, 6, 6, 6]


def test_preset_with_overrides(tmp_path):
    out = tmp_path / "cubic.csv"
    code = main(["preset", "cubic-oscillator", "--set", "phi=0.1", "--set", "dim=40", "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    ground = frame.iloc[(frame["ER"] - 0.4848).abs().argmin()]
    assert ground["ER"] == pytest.approx(0.4848450636272, abs=1e-6)
    assert ground["EI"] == pytest.approx(-3.60427916939e-3, abs=1e-6)


def test_run_with_no_converged_step_exits_3(capsys):
    assert main(["run", HARMONIC, "--max-iters", "1", "--out", "-"]) == 3
    captured = capsys.readouterr()
    # the header-only report is still written before the failure is reported
    assert captured.out.startswith("ER,EI")
    assert "CONVERGENCE" in captured.err


def test_validate(capsys):
    assert main(["validate", str(CONFIG_DIR / "pt_cubic.cfg")]) == 0
    assert "valid" in capsys.readouterr().err


def test_bad_key_exits_2_and_names_it(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text(Path(HARMONIC).read_text().replace("parity = full", "paritty = full"))
    assert main(["run", str(bad), "--out", "-"]) == 2
    assert "basis.paritty" in capsys.readouterr().err


def test_missing_file_and_unknown_preset_exit_2(tmp_path):
    assert main(["validate", str(tmp_path / "nope.cfg")]) == 2
    assert main(["preset", "quintic", "--out", "-"]) == 2
    assert main(["preset", "pt-cubic", "--set", "g=0.2", "--out", "-"]) == 2


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["sweep-dims", HARMONIC, "--dims", "ten"])
