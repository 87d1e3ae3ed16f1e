"""
Problem configuration files.

A .cfg file is INI-structured:

    [meta]       name, description
    [basis]      alpha, w = "re im", parity, dim, optional sweep = "10 20 ..."
    [potential]  c<k> = "re im" (or just "re"), origin_shift
    [scan]       e_min, e_max, de, optional dedupe_tol, min_persistence
    [iteration]  max_iters, tol, reference_row, rayleigh_update
    [probes]     x<m> = delta   (one energy-shift probe of <x^m> per key)

Parsing is fail-closed: unknown sections or keys raise ConfigError naming
the offending key. to_cfg_text() writes the canonical form back with
17 significant digits, so parse(to_cfg_text(cfg)) == cfg.
"""
import configparser
import hashlib
import re
from pathlib import Path
from typing import Annotated, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, field_validator, model_validator

from basis.oscillator import BasisSpec, Parity
from config.settings import settings
from core.errors import ConfigError, ResonanceError
from engine.models import IterationConfig, ScanConfig
from hamiltonian.potential import PolynomialPotential, check_degree, from_terms, shift_origin

_TERM_KEY = re.compile(r"^c(\d+)$")
_PROBE_KEY = re.compile(r"^x(\d+)$")


def _split_numbers(value):
    if isinstance(value, str):
        return [v for v in re.split(r"[\s,]+", value.strip()) if v]
    return value


def _fmt(value: float) -> str:
    return format(float(value), f".{settings.FLOAT_DIGITS}g")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MetaSection(_Section):
    name: str = ""
    description: str = ""


class BasisSection(_Section):
    alpha: float = Field(1.0, gt=0)
    w: Annotated[Tuple[float, float], BeforeValidator(_split_numbers)]
    parity: Parity = Parity.FULL
    dim: int = Field(..., ge=1)
    sweep: Optional[Annotated[List[int], BeforeValidator(_split_numbers)]] = None

    @field_validator("sweep")
    @classmethod
    def _ascending(cls, v):
        if v is not None and (not v or any(b <= a for a, b in zip(v, v[1:])) or v[0] < 1):
            raise ValueError("sweep dimensions must be positive and ascending")
        return v

    @property
    def w_complex(self) -> complex:
        return complex(*self.w)


class PotentialSection(_Section):
    terms: Dict[int, Tuple[float, float]]
    origin_shift: float = 0.0

    @field_validator("terms")
    @classmethod
    def _powers(cls, v):
        if not v:
            raise ValueError("at least one c<k> term is required")
        if any(k < 0 for k in v):
            raise ValueError("powers must be >= 0")
        return dict(sorted(v.items()))


class ScanSection(_Section):
    e_min: float
    e_max: float
    de: float = Field(..., gt=0)
    dedupe_tol: Optional[float] = Field(None, gt=0)
    min_persistence: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _window(self):
        if not self.e_min < self.e_max:
            raise ValueError(f"e_min {self.e_min} must be below e_max {self.e_max}")
        if self.de > self.e_max - self.e_min:
            raise ValueError(f"de {self.de} exceeds the scan window")
        return self


class IterationSection(_Section):
    max_iters: int = Field(default_factory=lambda: settings.DEFAULT_MAX_ITERS, ge=1)
    tol: float = Field(default_factory=lambda: settings.DEFAULT_TOL, gt=0)
    reference_row: int = Field(1, ge=1)
    rayleigh_update: bool = False


class ProbeSpec(_Section):
    power: int = Field(..., ge=1)
    delta: float = Field(default_factory=lambda: settings.PROBE_DELTA, gt=0)


class ProblemConfig(_Section):
    meta: MetaSection = Field(default_factory=MetaSection)
    basis: BasisSection
    potential: PotentialSection
    scan: ScanSection
    iteration: IterationSection = Field(default_factory=IterationSection)
    probes: List[ProbeSpec] = Field(default_factory=list)


# ------------------------------------------------------------------ #
# Parsing
# ------------------------------------------------------------------ #

def _raise_validation(exc: ValidationError) -> None:
    first = exc.errors()[0]
    loc = [str(p) for p in first["loc"]]
    if loc[:2] == ["potential", "terms"] and len(loc) > 2:
        key = f"potential.c{loc[2]}"
    else:
        # section.key; tuple and list positions below the key are dropped
        key = ".".join(loc[:2])
    raise ConfigError(first["msg"], key=key) from exc


def _potential_section(items: Dict[str, str]) -> Dict:
    section: Dict = {"terms": {}}
    for key, raw in items.items():
        match = _TERM_KEY.match(key)
        if match:
            parts = _split_numbers(raw)
            if len(parts) not in (1, 2):
                raise ConfigError(f"expected 're im' or 're', got {raw!r}", key=f"potential.{key}")
            try:
                re_part, im_part = float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0
            except ValueError:
                raise ConfigError(f"not a number: {raw!r}", key=f"potential.{key}") from None
            section["terms"][int(match.group(1))] = (re_part, im_part)
        else:
            # anything else goes through pydantic so unknown keys are rejected there
            section[key] = raw
    return section


def _probes_section(items: Dict[str, str]) -> List[Dict]:
    probes = []
    for key, raw in items.items():
        match = _PROBE_KEY.match(key)
        if not match:
            raise ConfigError("probe keys must look like x<power>", key=f"probes.{key}")
        probe = {"power": int(match.group(1))}
        if raw.strip():
            probe["delta"] = raw.strip()
        probes.append(probe)
    return probes


def parse_config_text(text: str) -> ProblemConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc

    data: Dict[str, Union[Dict, List]] = {}
    for name in parser.sections():
        items = dict(parser.items(name))
        if name == "potential":
            data[name] = _potential_section(items)
        elif name == "probes":
            data[name] = _probes_section(items)
        else:
            data[name] = items
    return problem_from_dict(data)


def problem_from_dict(data: Dict) -> ProblemConfig:
    """Validate an already-sectioned mapping (presets build these directly)."""
    try:
        return ProblemConfig.model_validate(data)
    except ValidationError as exc:
        _raise_validation(exc)


def load_config(path: Union[str, Path]) -> ProblemConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror or exc}", key=str(path)) from exc
    return parse_config_text(text)


# ------------------------------------------------------------------ #
# Canonical text and hash
# ------------------------------------------------------------------ #

def to_cfg_text(cfg: ProblemConfig) -> str:
    lines = ["[meta]", f"name = {cfg.meta.name}", f"description = {cfg.meta.description}", ""]

    b = cfg.basis
    lines += ["[basis]", f"alpha = {_fmt(b.alpha)}", f"w = {_fmt(b.w[0])} {_fmt(b.w[1])}",
              f"parity = {b.parity.value}", f"dim = {b.dim}"]
    if b.sweep:
        lines.append("sweep = " + " ".join(str(d) for d in b.sweep))
    lines.append("")

    lines += ["[potential]", f"origin_shift = {_fmt(cfg.potential.origin_shift)}"]
    lines += [f"c{k} = {_fmt(re_)} {_fmt(im_)}" for k, (re_, im_) in cfg.potential.terms.items()]
    lines.append("")

    s = cfg.scan
    lines += ["[scan]", f"e_min = {_fmt(s.e_min)}", f"e_max = {_fmt(s.e_max)}", f"de = {_fmt(s.de)}"]
    if s.dedupe_tol is not None:
        lines.append(f"dedupe_tol = {_fmt(s.dedupe_tol)}")
    if s.min_persistence is not None:
        lines.append(f"min_persistence = {s.min_persistence}")
    lines.append("")

    it = cfg.iteration
    lines += ["[iteration]", f"max_iters = {it.max_iters}", f"tol = {_fmt(it.tol)}",
              f"reference_row = {it.reference_row}",
              f"rayleigh_update = {'true' if it.rayleigh_update else 'false'}", ""]

    if cfg.probes:
        lines += ["[probes]"] + [f"x{p.power} = {_fmt(p.delta)}" for p in cfg.probes] + [""]
    return "\n".join(lines)


def config_hash(*cfgs: ProblemConfig) -> str:
    """sha256 of the canonical text of one or more configs, in order."""
    digest = hashlib.sha256()
    for cfg in cfgs:
        digest.update(to_cfg_text(cfg).encode("utf-8"))
    return digest.hexdigest()


# ------------------------------------------------------------------ #
# Conversion to the numerical types
# ------------------------------------------------------------------ #

def to_basis_spec(cfg: ProblemConfig, dim: Optional[int] = None) -> BasisSpec:
    b = cfg.basis
    return BasisSpec(alpha=b.alpha, w=b.w_complex, parity=b.parity, dim=dim or b.dim)


def to_potential(cfg: ProblemConfig) -> PolynomialPotential:
    pot = from_terms([(k, complex(*c)) for k, c in cfg.potential.terms.items()])
    return shift_origin(pot, cfg.potential.origin_shift)


def to_iteration_config(cfg: ProblemConfig, e0: complex = 0j) -> IterationConfig:
    it = cfg.iteration
    return IterationConfig(
        e0=e0,
        max_iters=it.max_iters,
        tol=it.tol,
        reference_row=it.reference_row,
        rayleigh_update=it.rayleigh_update,
    )


def to_scan_config(cfg: ProblemConfig, workers: Optional[int] = None) -> ScanConfig:
    s = cfg.scan
    optional = {
        "dedupe_tol": s.dedupe_tol,
        "min_persistence": s.min_persistence,
        "workers": workers,
    }
    return ScanConfig(
        e_min=s.e_min,
        e_max=s.e_max,
        de=s.de,
        iteration=to_iteration_config(cfg, complex(s.e_min)),
        **{k: v for k, v in optional.items() if v is not None},
    )


def validate_problem(cfg: ProblemConfig) -> Tuple[BasisSpec, PolynomialPotential, ScanConfig]:
    """Build every numerical object the config describes; invariant violations become ConfigError."""
    try:
        spec = to_basis_spec(cfg)
        pot = to_potential(cfg)
        check_degree(pot)
        for probe in cfg.probes:
            check_degree(pot.add_term(probe.power, probe.delta))
        if spec.parity is not Parity.FULL and not pot.is_even():
            raise ConfigError("odd potential powers need parity = full", key="basis.parity")
        scan_cfg = to_scan_config(cfg)
        for dim in cfg.basis.sweep or [spec.dim]:
            scan_cfg.iteration.validate_for(dim)
    except ConfigError:
        raise
    except ResonanceError as exc:
        raise ConfigError(str(exc)) from exc
    return spec, pot, scan_cfg
