"""JSON run configuration.

All angles in the file are degrees (keys end in ``_deg``), lengths metres,
forces newtons, stiffness N/m. Unknown keys are rejected so that a typo in a
physical parameter cannot go unnoticed.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvalidGeometry
from .model import (
    ANGLE_FIELDS,
    MOTION_GROUPS,
    MUSCLES,
    VECTOR_FIELDS,
    MuscleForces,
    RomEnvelope,
    ShoulderGeometry,
    degrees_to_internal,
    geometry_violations,
    internal_to_degrees,
)
from .torque import MOTIONS

REFERENCE_CONFIG = "reference_config.json"

_GEOMETRY_KEYS = {
    f.name + ("_deg" if f.name in ANGLE_FIELDS else ""): f.name for f in fields(ShoulderGeometry)
}
_SWEEP_KEYS = {"dislocation", "torque", "selflock", "coupling", "equilibrium", "rom_contact"}
_TOP_KEYS = {"geometry", "forces", "rom", "sweeps", "tolerances", "outputs", "provenance"}


@dataclass(frozen=True)
class Tolerances:
    marginal_deg: float = 1.0
    marginal_N: float = 1.0
    solver_tol: float = 1e-9
    grid_points: int = 1001
    max_iter: int = 200


@dataclass(frozen=True)
class Outputs:
    directory: str = "glenostatics_out"
    formats: tuple[str, ...] = ("csv", "json")


@dataclass
class RunConfig:
    geometry: ShoulderGeometry
    forces: MuscleForces
    robot_rom: RomEnvelope
    human_rom: RomEnvelope
    sweeps: dict = field(default_factory=dict)
    tolerances: Tolerances = field(default_factory=Tolerances)
    outputs: Outputs = field(default_factory=Outputs)
    provenance: dict = field(default_factory=dict)


def _reject_unknown(section, data, allowed):
    if not isinstance(data, dict):
        raise ConfigError(f"{section}: expected an object, got {type(data).__name__}")
    extra = sorted(set(data) - set(allowed))
    if extra:
        raise ConfigError(f"{section}: unknown key(s) {', '.join(extra)}")


def _number(section, key, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{section}.{key}: expected a finite number, got {v!r}")
    return float(v)


def grid_from_spec(spec, where="grid", min_points=2) -> np.ndarray:
    """Degrees grid from ``{"start", "stop", "points"}`` or ``{"values": [...]}``."""
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object")
    if "values" in spec:
        _reject_unknown(where, spec, {"values"})
        vals = [_number(where, "values", v) for v in spec["values"]]
        if not vals:
            raise ConfigError(f"{where}: values list is empty")
        return np.array(vals)
    _reject_unknown(where, spec, {"start", "stop", "points"})
    try:
        start, stop, points = spec["start"], spec["stop"], spec["points"]
    except KeyError as e:
        raise ConfigError(f"{where}: missing {e.args[0]!r}") from None
    if not isinstance(points, int) or points < min_points:
        raise ConfigError(f"{where}: need at least {min_points} points, got {points!r}")
    return np.linspace(_number(where, "start", start), _number(where, "stop", stop), points)


def _geometry_from_dict(d) -> ShoulderGeometry:
    _reject_unknown("geometry", d, _GEOMETRY_KEYS)
    missing = sorted(set(_GEOMETRY_KEYS) - set(d))
    if missing:
        raise ConfigError(f"geometry: missing key(s) {', '.join(missing)}")
    kw = {}
    for key, name in _GEOMETRY_KEYS.items():
        v = d[key]
        if name in VECTOR_FIELDS:
            if not isinstance(v, list) or len(v) != 3:
                raise ConfigError(f"geometry.{key}: expected a list of 3 numbers")
            kw[name] = tuple(_number("geometry", key, c) for c in v)
        elif name in ANGLE_FIELDS:
            kw[name] = degrees_to_internal(_number("geometry", key, v))
        else:
            kw[name] = _number("geometry", key, v)
    return ShoulderGeometry(**kw)


def _clean_degrees(rad: float) -> float:
    # radians -> degrees rounded to 15 significant digits, so 30 stays 30
    return float(f"{internal_to_degrees(rad):.15g}")


def _geometry_to_dict(g: ShoulderGeometry) -> dict:
    out = {}
    for key, name in _GEOMETRY_KEYS.items():
        v = getattr(g, name)
        if name in VECTOR_FIELDS:
            out[key] = list(v)
        elif name in ANGLE_FIELDS:
            out[key] = _clean_degrees(v)
        else:
            out[key] = v
    return out


def _rom_from_dict(where, d) -> RomEnvelope:
    keys = {m + "_deg" for m in MOTION_GROUPS}
    _reject_unknown(where, d, keys)
    try:
        pairs = {m: d[m + "_deg"] for m in MOTION_GROUPS}
    except KeyError as e:
        raise ConfigError(f"{where}: missing {e.args[0]!r}") from None
    for m, p in pairs.items():
        if not isinstance(p, list) or len(p) != 2:
            raise ConfigError(f"{where}.{m}_deg: expected [min, max]")
    try:
        return RomEnvelope.from_degrees(**{m: [_number(where, m, v) for v in p] for m, p in pairs.items()})
    except ValueError as e:
        raise ConfigError(f"{where}: {e}") from None


def _rom_to_dict(env: RomEnvelope) -> dict:
    return {m + "_deg": [_clean_degrees(v) for v in getattr(env, m)] for m in MOTION_GROUPS}


def _check_sweeps(s):
    _reject_unknown("sweeps", s, _SWEEP_KEYS)
    if "dislocation" in s:
        d = s["dislocation"]
        _reject_unknown("sweeps.dislocation", d, {"theta_h_deg", "theta_c_points"})
    if "torque" in s:
        _reject_unknown("sweeps.torque", s["torque"], MOTIONS)
        for motion, spec in s["torque"].items():
            _reject_unknown(f"sweeps.torque.{motion}", spec, {"axis1_deg", "axis2_deg"})
            for k, g in spec.items():
                grid_from_spec(g, f"sweeps.torque.{motion}.{k}")
    if "selflock" in s:
        _reject_unknown("sweeps.selflock", s["selflock"], {"theta_d_deg", "socket_half_deg"})
    if "coupling" in s:
        _reject_unknown("sweeps.coupling", s["coupling"], {"cases"})
        for i, case in enumerate(s["coupling"].get("cases", [])):
            _reject_unknown(f"sweeps.coupling.cases[{i}]", case,
                            {"label", "theta_d_deg", "theta_s_deg", "theta_e_deg"})
    if "equilibrium" in s:
        _reject_unknown("sweeps.equilibrium", s["equilibrium"], {"bracket_deg"})
    if "rom_contact" in s:
        _reject_unknown("sweeps.rom_contact", s["rom_contact"], {"theta_fr_deg", "theta_fa_deg", "theta0_deg"})
        if "theta0_deg" in s["rom_contact"]:
            grid_from_spec(s["rom_contact"]["theta0_deg"], "sweeps.rom_contact.theta0_deg")


def config_from_dict(data: dict, validate: bool = True) -> RunConfig:
    _reject_unknown("config", data, _TOP_KEYS)
    for key in ("geometry", "forces", "rom"):
        if key not in data:
            raise ConfigError(f"config: missing section {key!r}")
    geometry = _geometry_from_dict(data["geometry"])
    _reject_unknown("forces", data["forces"], MUSCLES)
    try:
        forces = MuscleForces(**{k: _number("forces", k, v) for k, v in data["forces"].items()})
    except ValueError as e:
        raise ConfigError(f"forces: {e}") from None
    _reject_unknown("rom", data["rom"], {"robot", "human"})
    robot = _rom_from_dict("rom.robot", data["rom"].get("robot"))
    human = _rom_from_dict("rom.human", data["rom"].get("human"))
    sweeps = copy.deepcopy(data.get("sweeps", {}))
    _check_sweeps(sweeps)
    tol_data = data.get("tolerances", {})
    _reject_unknown("tolerances", tol_data, {f.name for f in fields(Tolerances)})
    tolerances = Tolerances(**tol_data)
    out_data = data.get("outputs", {})
    _reject_unknown("outputs", out_data, {"directory", "formats"})
    outputs = Outputs(
        directory=out_data.get("directory", Outputs.directory),
        formats=tuple(out_data.get("formats", Outputs.formats)),
    )
    if not outputs.directory:
        raise ConfigError("outputs.directory must be non-empty")
    provenance = dict(data.get("provenance", {}))
    cfg = RunConfig(geometry, forces, robot, human, sweeps, tolerances, outputs, provenance)
    if validate:
        violations = geometry_violations(geometry, robot)
        if violations:
            raise InvalidGeometry(violations)
    return cfg


def config_to_dict(cfg: RunConfig) -> dict:
    return {
        "geometry": _geometry_to_dict(cfg.geometry),
        "forces": {m: getattr(cfg.forces, m) for m in MUSCLES},
        "rom": {"robot": _rom_to_dict(cfg.robot_rom), "human": _rom_to_dict(cfg.human_rom)},
        "sweeps": copy.deepcopy(cfg.sweeps),
        "tolerances": {f.name: getattr(cfg.tolerances, f.name) for f in fields(Tolerances)},
        "outputs": {"directory": cfg.outputs.directory, "formats": list(cfg.outputs.formats)},
        "provenance": dict(sorted(cfg.provenance.items())),
    }


def dumps(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"


def loads(text: str, validate: bool = True) -> RunConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from None
    return config_from_dict(data, validate)


def load_config(path, validate: bool = True) -> RunConfig:
    return loads(Path(path).read_text(encoding="utf-8"), validate)


def reference_config_text() -> str:
    return resources.files("glenostatics").joinpath("data", REFERENCE_CONFIG).read_text(encoding="utf-8")


def load_reference_config() -> RunConfig:
    return loads(reference_config_text())
