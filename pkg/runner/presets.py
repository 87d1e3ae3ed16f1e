"""
Named presets: each one expands into the labelled problem configurations
behind one reference table.

    triple-well-resonance   x^2 - 2g^2 x^4 + g^4 x^6, W = (1, 15), even + odd
    triple-well-bound       same potential, W = (1, 0), with <x^2> probes
    pt-cubic                i A x^3 + i B x, W = (1, 0.5), full basis
    cubic-oscillator        x^2/2 + g e^(i phi) x^3, alpha = 1/2, W = (0.5, -0.5)
    unorthodox              x^M - lambda x^N, W = (1, 1), even + odd
    double-well             -x^2 + lambda^2 x^4 / 2 about x = 1/lambda, dimension sweep

W follows BasisSpec, where the x matrix scales as (alpha / 4W)^(1/4). The
pt-cubic basis has to stay inside the Stokes wedges of +-i x^3, which
W = (1, 15) leaves. The cubic-oscillator reference rows were computed with
the conjugate W, so their W = (0.5, 0.5) is entered here as (0.5, -0.5).

Overrides are "key=value" strings; a value may be a comma list, which
replaces the preset's default list for that parameter.
"""
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Sequence

from loguru import logger

from core.errors import ConfigError, UnknownPresetError
from hamiltonian.potential import (
    PolynomialPotential,
    cubic_oscillator,
    double_well,
    power_pair,
    pt_cubic,
    triple_well,
)
from runner.problem_config import ProblemConfig, problem_from_dict


@dataclass
class PresetRun:
    label: str
    params: Dict[str, float]
    config: ProblemConfig


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    build: Callable[[Dict[str, list]], List[dict]]
    keys: FrozenSet[str]


COMMON_KEYS = frozenset({"dim", "dims", "max_iters", "tol", "rayleigh_update", "de", "parity"})
_INT_KEYS = {"dim", "dims", "max_iters", "M", "N"}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key == "rayleigh_update":
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("true", "1", "yes")
        if key == "parity":
            if raw not in ("even", "odd", "full"):
                raise ValueError(raw)
            return raw
        return float(raw)
    except ValueError:
        raise ConfigError(f"invalid value {raw!r}", key=key) from None


def parse_overrides(pairs: Sequence[str]) -> Dict[str, list]:
    """["g=0.2,0.24", "dim=60"] -> {"g": [0.2, 0.24], "dim": [60]}"""
    overrides: Dict[str, list] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        key = key.strip()
        if not sep or not key or not value.strip():
            raise ConfigError(f"override must look like key=value, got {pair!r}")
        overrides[key] = [_coerce(key, v) for v in value.split(",")]
    return overrides


def _pick(overrides: Dict[str, list], key: str, default: list) -> list:
    return overrides.get(key, default)


def _run(label: str, params: Dict[str, float], **sections) -> dict:
    sections.setdefault("meta", {"name": label})
    return {"label": label, "params": params, "config": sections}


def _potential(pot: PolynomialPotential, origin_shift: float = 0.0) -> dict:
    """[potential] section of a factory-built potential: {"terms": {3: (0.0, 1.0)}, ...}"""
    section = {"terms": {k: (c.real, c.imag) for k, c in enumerate(pot.coeffs) if c != 0}}
    if origin_shift:
        section["origin_shift"] = origin_shift
    return section


# ------------------------------------------------------------------ #
# Table builders
# ------------------------------------------------------------------ #

_TRIPLE_WELL_WINDOWS = {
    "resonance": {"even": (0.5, 4.5, 0.1), "odd": (1.5, 3.5, 0.1)},
    "bound": {"even": (0.5, 2.0, 0.05), "odd": (1.2, 2.9, 0.05)},
}


def _triple_well(kind: str, w: tuple, probes: list):
    def build(o: Dict[str, list]) -> List[dict]:
        runs = []
        for g, parity in product(_pick(o, "g", [0.20, 0.24, 0.28]), _pick(o, "parity", ["even", "odd"])):
            if parity == "full":
                windows = _TRIPLE_WELL_WINDOWS[kind]
                e_min = min(v[0] for v in windows.values())
                e_max = max(v[1] for v in windows.values())
                de = min(v[2] for v in windows.values())
            else:
                e_min, e_max, de = _TRIPLE_WELL_WINDOWS[kind][parity]
            runs.append(_run(
                f"g={g:g} parity={parity}", {"g": g},
                basis={"alpha": 1.0, "w": w, "parity": parity, "dim": 150},
                potential=_potential(triple_well(g)),
                scan={"e_min": e_min, "e_max": e_max, "de": de},
                iteration={"max_iters": 500},
                probes=list(probes),
            ))
        return runs
    return build


def _pt_cubic(o: Dict[str, list]) -> List[dict]:
    runs = []
    for a, b in product(_pick(o, "A", [1.0]), _pick(o, "B", [0.0, -3.0, -4.0, -5.0])):
        broken = b != 0
        runs.append(_run(
            f"A={a:g} B={b:g}", {"A": a, "B": b},
            basis={"alpha": 1.0, "w": (1.0, 0.5), "parity": "full", "dim": 150},
            potential=_potential(pt_cubic(a, b)),
            scan={"e_min": 0.5, "e_max": 8.0 if broken else 16.0, "de": 0.25},
            # a real shift sits midway between a conjugate pair; the update breaks the tie
            iteration={"max_iters": 500, "rayleigh_update": broken},
        ))
    return runs


def _cubic_oscillator(o: Dict[str, list]) -> List[dict]:
    phis = [round(-0.10 + 0.02 * k, 2) for k in range(11)]
    runs = []
    for g, phi in product(_pick(o, "g", [0.1]), _pick(o, "phi", phis)):
        runs.append(_run(
            f"g={g:g} phi={phi:+.2f}", {"g": g, "phi": phi},
            basis={"alpha": 0.5, "w": (0.5, -0.5), "parity": "full", "dim": 150},
            potential=_potential(cubic_oscillator(g, phi)),
            scan={"e_min": 0.40, "e_max": 0.60, "de": 0.05},
        ))
    return runs


_UNORTHODOX_DEFAULTS = {
    (2, 6): [0.02, 0.04, 0.06, 0.08, 0.10],
    (4, 6): [0.00, 0.04, 0.08, 0.12, 0.16, 0.20],
}
_UNORTHODOX_WINDOWS = {"even": (0.6, 1.3, 0.05), "odd": (2.4, 4.0, 0.1)}


def _unorthodox(o: Dict[str, list]) -> List[dict]:
    if "M" in o or "N" in o:
        pairs = list(product(_pick(o, "M", [4]), _pick(o, "N", [6])))
        cases = [(m, n, lam) for m, n in pairs
                 for lam in _pick(o, "lam", _UNORTHODOX_DEFAULTS.get((m, n), [0.0]))]
    else:
        cases = [(m, n, lam) for (m, n), lams in _UNORTHODOX_DEFAULTS.items()
                 for lam in _pick(o, "lam", lams)]

    runs = []
    for (m, n, lam), parity in product(cases, _pick(o, "parity", ["even", "odd"])):
        if m % 2 or n % 2:
            if parity != "full":
                raise ConfigError(f"x^{m} - lambda x^{n} has odd powers; use parity=full", key="parity")
        if parity == "full":
            e_min, e_max, de = 0.6, 4.0, 0.05
        else:
            e_min, e_max, de = _UNORTHODOX_WINDOWS[parity]
        runs.append(_run(
            f"M={m} N={n} lam={lam:.2f} parity={parity}", {"M": m, "N": n, "lam": lam},
            basis={"alpha": 1.0, "w": (1.0, 1.0), "parity": parity, "dim": 150},
            potential=_potential(power_pair(m, n, lam)),
            scan={"e_min": e_min, "e_max": e_max, "de": de},
        ))
    return runs


_DOUBLE_WELL_WINDOWS = {0.3: (-4.3, -4.1), 0.4: (-1.9, -1.7)}


def double_well_window(lam: float) -> tuple:
    """Scan window around the lowest doublet; fixed windows where they exist."""
    for known, window in _DOUBLE_WELL_WINDOWS.items():
        if abs(known - lam) < 1e-12:
            return window
    # harmonic estimate at the well bottom, -1/(2 lambda^2) + sqrt(2), less the tunnelling shift
    centre = -1.0 / (2 * lam ** 2) + math.sqrt(2.0) - 0.06
    return (round(centre - 0.1, 6), round(centre + 0.1, 6))


def _double_well(o: Dict[str, list]) -> List[dict]:
    dims = _pick(o, "dims", list(range(10, 90, 10)))
    runs = []
    for lam in _pick(o, "lam", [0.3, 0.4]):
        if lam <= 0:
            raise ConfigError(f"lambda must be > 0, got {lam}", key="lam")
        e_min, e_max = double_well_window(lam)
        runs.append(_run(
            f"lam={lam:g}", {"lam": lam},
            basis={"alpha": 1.0, "w": (2.0, 0.0), "parity": "full", "dim": dims[-1], "sweep": dims},
            potential=_potential(double_well(lam), origin_shift=1.0 / lam),
            scan={"e_min": e_min, "e_max": e_max, "de": 0.02},
            # the doublet splitting is far below the grid spacing; fixed shifts stall
            iteration={"max_iters": 500, "rayleigh_update": True},
        ))
    return runs


PRESETS: Dict[str, Preset] = {
    p.name: p for p in [
        Preset("triple-well-resonance", "Triple-well resonances, W=(1,15), ND=150",
               _triple_well("resonance", (1.0, 15.0), []), frozenset({"g"})),
        Preset("triple-well-bound", "Triple-well bound states with <x^2>, W=(1,0), ND=150",
               _triple_well("bound", (1.0, 0.0), [{"power": 2}]), frozenset({"g"})),
        Preset("pt-cubic", "PT-symmetric i A x^3 + i B x, W=(1,0.5), ND=150",
               _pt_cubic, frozenset({"A", "B"})),
        Preset("cubic-oscillator", "Cubic oscillator with complex coupling, W=(0.5,-0.5), ND=150",
               _cubic_oscillator, frozenset({"g", "phi"})),
        Preset("unorthodox", "x^M - lambda x^N resonances, W=(1,1), ND=150",
               _unorthodox, frozenset({"M", "N", "lam"})),
        Preset("double-well", "Origin-shifted double well, W=(2,0), ND sweep",
               _double_well, frozenset({"lam"})),
    ]
}


def _apply_common(config: dict, o: Dict[str, list]) -> dict:
    def single(key):
        values = o[key]
        if len(values) != 1:
            raise ConfigError("expects a single value", key=key)
        return values[0]

    basis = config["basis"]
    if "dims" in o:
        dims = sorted(set(o["dims"]))
        basis["sweep"], basis["dim"] = dims, dims[-1]
    if "dim" in o:
        basis["dim"] = single("dim")
        basis.pop("sweep", None)
    if "parity" in o:
        basis["parity"] = basis.get("parity") if len(o["parity"]) > 1 else single("parity")
    if "de" in o:
        config["scan"]["de"] = single("de")
    iteration = config.setdefault("iteration", {})
    for key in ("max_iters", "tol", "rayleigh_update"):
        if key in o:
            iteration[key] = single(key)
    return config


def expand_preset(name: str, overrides: Dict[str, list] = None) -> List[PresetRun]:
    """The labelled configurations a preset runs, with overrides applied."""
    if name not in PRESETS:
        raise UnknownPresetError(f"unknown preset; choose from {', '.join(PRESETS)}", key=name)
    preset = PRESETS[name]
    overrides = overrides or {}
    unknown = set(overrides) - preset.keys - COMMON_KEYS
    if unknown:
        raise ConfigError(f"not an override of preset {name}", key=sorted(unknown)[0])

    runs = []
    for raw in preset.build(overrides):
        config = _apply_common(raw["config"], overrides)
        runs.append(PresetRun(raw["label"], raw["params"], problem_from_dict(config)))
    logger.info(f"Preset {name}: {len(runs)} run(s)")
    return runs
