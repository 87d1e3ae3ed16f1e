import sys
import os
sys.path.append(os.getcwd())

from pathlib import Path

import pytest

from basis.oscillator import Parity
from core.errors import ConfigError
from runner.problem_config import (
    config_hash,
    load_config,
    parse_config_text,
    to_cfg_text,
    to_potential,
    to_scan_config,
    validate_problem,
)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

HARMONIC = """
[basis]
w = 1.0 0.0
dim = 10

[potential]
c2 = 1.0

[scan]
e_min = 0.5
e_max = 5.5
de = 0.5
"""


def _with(text, old, new):
    assert old in text
    return text.replace(old, new)


def test_parse_minimal_config_with_defaults():
    cfg = parse_config_text(HARMONIC)
    assert cfg.basis.alpha == 1.0
    assert cfg.basis.w == (1.0, 0.0)
    assert cfg.basis.parity is Parity.FULL
    assert cfg.basis.sweep is None
    assert cfg.potential.terms == {2: (1.0, 0.0)}
    assert cfg.iteration.max_iters == 200
    assert cfg.iteration.tol == 1e-13
    assert cfg.probes == []


def test_parse_full_config():
    cfg = load_config(CONFIG_DIR / "triple_well_bound_g020.cfg")
    assert cfg.meta.name == "triple_well_bound_g020"
    assert cfg.basis.parity is Parity.EVEN
    assert cfg.basis.dim == 150
    assert cfg.potential.terms[4] == (-0.08, 0.0)
    assert cfg.iteration.max_iters == 500
    assert [(p.power, p.delta) for p in cfg.probes] == [(2, 5e-05)]


def test_comma_separated_numbers_and_inline_comments():
    cfg = parse_config_text(_with(HARMONIC, "w = 1.0 0.0", "w = 1.0, 15.0   ; W"))
    assert cfg.basis.w_complex == complex(1.0, 15.0)


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.cfg")), ids=lambda p: p.name)
def test_canonical_text_round_trip(path):
    cfg = load_config(path)
    again = parse_config_text(to_cfg_text(cfg))
    assert again == cfg
    assert config_hash(again) == config_hash(cfg)
    validate_problem(cfg)


def test_hash_tracks_content():
    a = parse_config_text(HARMONIC)
    b = parse_config_text(_with(HARMONIC, "dim = 10", "dim = 11"))
    assert config_hash(a) != config_hash(b)
    assert config_hash(a, b) != config_hash(b, a)
    assert len(config_hash(a)) == 64


@pytest.mark.parametrize("old, new, key", [
    ("dim = 10", "dim = 10\nparitty = even", "basis.paritty"),
    ("dim = 10", "dim = 0", "basis.dim"),
    ("w = 1.0 0.0", "w = 1.0", "basis.w"),
    ("w = 1.0 0.0", "w = 1.0 0.0\nalpha = -1", "basis.alpha"),
    ("w = 1.0 0.0", "w = 1.0 0.0\nsweep = 20 10", "basis.sweep"),
    ("c2 = 1.0", "c2 = one", "potential.c2"),
    ("c2 = 1.0", "c2 = 1 2 3", "potential.c2"),
    ("c2 = 1.0", "c2 = 1.0\nshift = 2", "potential.shift"),
    ("de = 0.5", "de = 0", "scan.de"),
])
def test_invalid_values_name_the_key(old, new, key):
    with pytest.raises(ConfigError) as info:
        parse_config_text(_with(HARMONIC, old, new))
    assert info.value.key == key
    assert key in str(info.value)


def test_unknown_section_and_probe_key():
    with pytest.raises(ConfigError) as info:
        parse_config_text(HARMONIC + "\n[solver]\npivoting = yes\n")
    assert info.value.key == "solver"
    with pytest.raises(ConfigError) as info:
        parse_config_text(HARMONIC + "\n[probes]\ny2 = 0.001\n")
    assert info.value.key == "probes.y2"


def test_inverted_scan_window():
    with pytest.raises(ConfigError):
        parse_config_text(_with(HARMONIC, "e_max = 5.5", "e_max = 0.1"))


def test_malformed_and_missing_files(tmp_path):
    with pytest.raises(ConfigError):
        parse_config_text("dim = 10\n")
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.cfg")


def test_validate_rejects_odd_powers_in_a_parity_basis():
    text = _with(HARMONIC, "c2 = 1.0", "c3 = 0 1")
    text = _with(text, "dim = 10", "dim = 10\nparity = even")
    with pytest.raises(ConfigError) as info:
        validate_problem(parse_config_text(text))
    assert info.value.key == "basis.parity"


def test_validate_rejects_reference_row_beyond_dim():
    with pytest.raises(ConfigError):
        validate_problem(parse_config_text(HARMONIC + "\n[iteration]\nreference_row = 11\n"))


def test_validate_rejects_degree_above_cap():
    with pytest.raises(ConfigError):
        validate_problem(parse_config_text(_with(HARMONIC, "c2 = 1.0", "c2 = 1.0\nc10 = 1.0")))


def test_origin_shift_is_applied():
    cfg = load_config(CONFIG_DIR / "double_well_lam03.cfg")
    pot = to_potential(cfg)
    assert pot.origin == pytest.approx(1 / 0.3)
    assert pot.coefficient(1) == pytest.approx(0.0, abs=1e-12)
    assert pot.coefficient(2) == pytest.approx(2.0)
    assert pot.coefficient(3) == pytest.approx(0.6)
    assert cfg.basis.sweep == [10, 20, 30, 40, 50, 60, 70, 80]


def test_scan_config_conversion():
    cfg = parse_config_text(HARMONIC + "\n[iteration]\nrayleigh_update = true\n")
    scan_cfg = to_scan_config(cfg, workers=3)
    assert scan_cfg.workers == 3
    assert scan_cfg.iteration.e0 == 0.5
    assert scan_cfg.iteration.rayleigh_update
    assert len(scan_cfg.grid()) == 11
