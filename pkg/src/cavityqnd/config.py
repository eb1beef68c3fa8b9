"""Run configuration: a YAML file with explicit units on every rate.

Cavity rates (g, kappa, delta, gamma, gamma_r) are angular: a value tagged
in Hz is multiplied by 2 pi on ingestion, one tagged in rad/s is taken as is.
Storage decay rates (gamma_s, gamma_h) are population decay rates: Hz and
1/s both mean events per second and no 2 pi is applied.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import yaml

from .errors import ConfigError
from .phase import CavityParams, Geometry

_PREFIX = {"": 1.0, "k": 1e3, "M": 1e6, "G": 1e9, "T": 1e12}
_SUB = {"": 1.0, "m": 1e-3, "u": 1e-6, "µ": 1e-6, "n": 1e-9, "p": 1e-12}

_NUMBER = r"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
_QUANTITY = re.compile(rf"^\s*{_NUMBER}\s*(\S.*?)?\s*$")

CAVITY_RATES = ("g", "kappa", "delta", "gamma", "gamma_r")
DECAY_RATES = ("gamma_s", "gamma_h")


def _split(text) -> tuple:
    if isinstance(text, bool) or not isinstance(text, (str, int, float)):
        raise ValueError(f"expected a quantity string, got {text!r}")
    m = _QUANTITY.match(str(text))
    if not m:
        raise ValueError(f"cannot parse quantity {text!r}")
    return float(m.group(1)), (m.group(2) or "").strip()


def parse_angular_rate(text) -> float:
    """'8 MHz' -> 2 pi * 8e6 rad/s; '50.27 Mrad/s' -> 5.027e7 rad/s."""
    value, unit = _split(text)
    m = re.fullmatch(r"([kMGT]?)(Hz|rad/s)", unit)
    if not m:
        raise ValueError(f"rate {text!r} needs a unit tag (Hz, kHz, MHz, GHz or [k|M|G]rad/s)")
    scaled = value * _PREFIX[m.group(1)]
    return 2.0 * math.pi * scaled if m.group(2) == "Hz" else scaled


def parse_decay_rate(text) -> float:
    """'0.34 kHz' -> 340 per second."""
    value, unit = _split(text)
    m = re.fullmatch(r"([kMGT]?)Hz", unit)
    if m:
        return value * _PREFIX[m.group(1)]
    if unit in ("1/s", "/s", "s^-1"):
        return value
    raise ValueError(f"decay rate {text!r} needs a unit tag (Hz, kHz, MHz or 1/s)")


def parse_time(text) -> float:
    """'1 us' -> 1e-6 s."""
    value, unit = _split(text)
    m = re.fullmatch(r"([munpµ]?)s", unit)
    if not m:
        raise ValueError(f"time {text!r} needs a unit tag (s, ms, us, ns)")
    return value * _SUB[m.group(1)]


def parse_length(text, power: int = 1) -> float:
    """SI number, or a string such as '879 nm', '0.1 um^2', '2 um^3'."""
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    value, unit = _split(text)
    suffix = "" if power == 1 else f"^{power}"
    m = re.fullmatch(rf"([munpµ]?)m{re.escape(suffix)}", unit)
    if not m:
        raise ValueError(f"length {text!r} has unit {unit!r}; expected [m|u|n]m{suffix}")
    return value * _SUB[m.group(1)] ** power


GEOMETRY_FIELDS = {
    "wavelength": 1,
    "refractive_index": 0,
    "mode_area": 2,
    "mode_length": 1,
    "finesse": 0,
    "quality_factor": 0,
    "mode_volume": 3,
}

QUADRATURE_SCALES = {"1": 1.0, "sqrt2": math.sqrt(2.0)}


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration. Rate fields keep their unit-tagged text."""

    g: str = "8 MHz"
    kappa: str = "30 MHz"
    delta: str = "100 MHz"
    gamma: str = "100 kHz"
    gamma_r: str = "1 kHz"
    gamma_s: str = "0.34 kHz"
    gamma_h: str = "100 kHz"
    n_atoms: float = 100000
    n_probe: float = 6000
    eta_r: float = 0.5
    geometry: Optional[dict] = None
    window_sigmas: float = 10.0
    q_points: int = 401
    quadrature_points: int = 4001
    quadrature_scale: str = "1"
    exact_loss_coefficient: bool = False
    epsilon: float = 0.001
    n_probe_eval: float = 2000
    bin_separation: str = "1 us"
    output_directory: str = "out"
    output_format: str = "both"
    sweep: Optional[dict] = None

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    # -- validation -----------------------------------------------------------

    def problems(self) -> list:
        out = []
        for name in ("n_atoms", "n_probe", "eta_r", "window_sigmas", "epsilon", "n_probe_eval",
                     "q_points", "quadrature_points"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                out.append(f"{name}: expected a number, got {value!r}")
        if out:
            return out
        for name in CAVITY_RATES:
            try:
                parse_angular_rate(getattr(self, name))
            except ValueError as exc:
                out.append(f"{name}: {exc}")
        for name in DECAY_RATES:
            try:
                parse_decay_rate(getattr(self, name))
            except ValueError as exc:
                out.append(f"{name}: {exc}")
        try:
            parse_time(self.bin_separation)
        except ValueError as exc:
            out.append(f"bin_separation: {exc}")
        if self.quadrature_scale not in QUADRATURE_SCALES:
            out.append(f"quadrature_scale must be one of {sorted(QUADRATURE_SCALES)}")
        if self.output_format not in ("csv", "json", "both"):
            out.append("output_format must be csv, json or both")
        if not 0 < self.epsilon < 1:
            out.append("epsilon must lie in (0, 1)")
        if self.window_sigmas < 1:
            out.append("window_sigmas must be >= 1")
        if self.q_points < 2 or self.quadrature_points < 2:
            out.append("grid point counts must be >= 2")
        if not self.n_probe_eval > 0:
            out.append("n_probe_eval must be > 0")
        if self.geometry is not None:
            out.extend(self._geometry_problems())
        if not out:
            try:
                self._cavity_params()
            except ConfigError as exc:
                out.extend(exc.problems)
        return out

    def _geometry_problems(self) -> list:
        out = []
        if not isinstance(self.geometry, dict):
            return ["geometry must be a mapping"]
        unknown = set(self.geometry) - set(GEOMETRY_FIELDS)
        if unknown:
            out.append(f"geometry: unknown fields {sorted(unknown)}")
        for name, power in GEOMETRY_FIELDS.items():
            if name not in self.geometry:
                if name not in ("quality_factor", "mode_volume"):
                    out.append(f"geometry.{name} is required")
                continue
            try:
                self._geometry_value(name, power)
            except ValueError as exc:
                out.append(f"geometry.{name}: {exc}")
        return out

    def _geometry_value(self, name, power):
        raw = self.geometry[name]
        if power == 0:
            if isinstance(raw, bool) or not isinstance(raw, (int, float)):
                raise ValueError(f"expected a number, got {raw!r}")
            return float(raw)
        return parse_length(raw, power)

    # -- derived values ----------------------------------------------------

    def geometry_block(self) -> Optional[Geometry]:
        if self.geometry is None:
            return None
        kwargs = {
            name: self._geometry_value(name, power)
            for name, power in GEOMETRY_FIELDS.items()
            if name in self.geometry
        }
        return Geometry(**kwargs)

    def _cavity_params(self) -> CavityParams:
        return CavityParams(
            g=parse_angular_rate(self.g),
            kappa=parse_angular_rate(self.kappa),
            delta=parse_angular_rate(self.delta),
            gamma=parse_angular_rate(self.gamma),
            gamma_r=parse_angular_rate(self.gamma_r),
            n_atoms=self.n_atoms,
            n_probe=self.n_probe,
            eta_r=self.eta_r,
            geometry=self.geometry_block(),
        )

    def cavity_params(self) -> CavityParams:
        return self._cavity_params()

    @property
    def scale(self) -> float:
        return QUADRATURE_SCALES[self.quadrature_scale]

    @property
    def storage_decay(self) -> float:
        return parse_decay_rate(self.gamma_s)

    @property
    def excited_decay(self) -> float:
        return parse_decay_rate(self.gamma_h)

    @property
    def bin_separation_s(self) -> float:
        return parse_time(self.bin_separation)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, allow_unicode=True)

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError([f"unknown configuration key {k!r}" for k in unknown])
    return RunConfig(**data)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    data = yaml.safe_load(text) or {}
    return config_from_dict(data)
