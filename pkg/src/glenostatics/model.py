"""Domain types, unit conversion and geometry validation.

Internally every angle is in radians, every length in metres and every force
in newtons. Degrees only appear at the file and command-line boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import NamedTuple

import numpy as np

from .errors import InvalidGeometry, NonFinite, PoseOutOfEnvelope

# Numerical slack used when an equality constraint is checked in floating point.
REL_SLACK = 1e-12
# Grid step for the anchor reach check of validate_geometry.
_REACH_STEP = math.radians(0.25)


def degrees_to_internal(x: float) -> float:
    """Convert degrees to radians (exactly ``x * pi / 180``)."""
    x = float(x)
    if not math.isfinite(x):
        raise NonFinite(f"angle is not finite: {x!r}")
    return x * (math.pi / 180.0)


def internal_to_degrees(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NonFinite(f"angle is not finite: {x!r}")
    return x * (180.0 / math.pi)


@dataclass(frozen=True)
class JointPose:
    """Glenohumeral joint angles in radians.

    ``flexion`` is positive for flexion and negative for extension,
    ``abduction`` is positive for abduction, ``rotation`` is positive for
    external rotation.
    """

    flexion: float = 0.0
    abduction: float = 0.0
    rotation: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v):
                raise NonFinite(f"JointPose.{f.name} is not finite: {v!r}")

    @classmethod
    def from_degrees(cls, flexion=0.0, abduction=0.0, rotation=0.0):
        return cls(
            degrees_to_internal(flexion),
            degrees_to_internal(abduction),
            degrees_to_internal(rotation),
        )


@dataclass(frozen=True)
class ShoulderGeometry:
    """Every length, radius and reference angle used by the joint models.

    Lengths in metres, angles in radians, stiffness in N/m. The two head radii
    (``head_radius`` for the dislocation model, ``rotation_head_radius`` for
    the rotation torque model) are separate fields on purpose.
    """

    # incomplete ball-and-socket dislocation
    head_radius: float
    tendon_rest_length: float
    tendon_stiffness: float
    # biceps coupling across shoulder and elbow
    head_moment_radius: float
    elbow_moment_arm: float
    upper_arm_length: float
    forearm_lever: float
    scapula_angle: float
    socket_contact_angle: float
    # deltoid flexion / extension
    anterior_anchor: tuple[float, float, float]
    anterior_anchor_distance: float
    posterior_anchor: tuple[float, float, float]
    posterior_anchor_distance: float
    deltoid_humeral_distance: float
    # abduction
    notch_distance: float
    abductor_lever: float
    # adduction
    triceps_anchor_distance: float
    triceps_initial_angle: float
    # axial rotation
    rotator_motor_distance: float
    rotator_insertion_projection: float
    rotation_head_radius: float
    rotator_insertion_angle: float

    def replace(self, **changes) -> "ShoulderGeometry":
        return replace(self, **changes)


LENGTH_FIELDS = (
    "head_radius",
    "tendon_rest_length",
    "head_moment_radius",
    "elbow_moment_arm",
    "upper_arm_length",
    "forearm_lever",
    "anterior_anchor_distance",
    "posterior_anchor_distance",
    "deltoid_humeral_distance",
    "notch_distance",
    "abductor_lever",
    "triceps_anchor_distance",
    "rotator_motor_distance",
    "rotator_insertion_projection",
    "rotation_head_radius",
)
ANGLE_FIELDS = (
    "scapula_angle",
    "socket_contact_angle",
    "triceps_initial_angle",
    "rotator_insertion_angle",
)
VECTOR_FIELDS = ("anterior_anchor", "posterior_anchor")


MUSCLES = (
    "deltoid_anterior_posterior",
    "supraspinatus",
    "biceps_long_head",
    "deltoid_middle",
    "triceps_long_head",
    "subscapularis",
)


@dataclass(frozen=True)
class MuscleForces:
    """Tendon tensions in newtons.

    The anterior and posterior deltoid share one tension; subscapularis and
    infraspinatus are symmetric and share another.
    """

    deltoid_anterior_posterior: float = 700.0
    supraspinatus: float = 600.0
    biceps_long_head: float = 500.0
    deltoid_middle: float = 700.0
    triceps_long_head: float = 700.0
    subscapularis: float = 600.0

    def __post_init__(self):
        for name in MUSCLES:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise NonFinite(f"tension of {name} is not finite: {v!r}")
            if v < 0:
                raise ValueError(f"tendons cannot push: {name} = {v!r} N")

    def scaled(self, k: float) -> "MuscleForces":
        return MuscleForces(**{m: k * getattr(self, m) for m in MUSCLES})


MOTION_GROUPS = ("flexion_extension", "abduction_adduction", "rotation")


@dataclass(frozen=True)
class RomEnvelope:
    """Per-motion (min, max) joint limits of one arm, radians."""

    flexion_extension: tuple[float, float]
    abduction_adduction: tuple[float, float]
    rotation: tuple[float, float]

    def __post_init__(self):
        for name in MOTION_GROUPS:
            lo, hi = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise NonFinite(f"{name} limits are not finite")
            if not lo < hi:
                raise ValueError(f"{name}: min {lo!r} must be below max {hi!r}")

    def span(self, motion: str) -> float:
        lo, hi = getattr(self, motion)
        return hi - lo

    def contains(self, pose: JointPose) -> bool:
        checks = (
            (pose.flexion, self.flexion_extension),
            (pose.abduction, self.abduction_adduction),
            (pose.rotation, self.rotation),
        )
        return all(lo - REL_SLACK <= v <= hi + REL_SLACK for v, (lo, hi) in checks)

    @classmethod
    def from_degrees(cls, flexion_extension, abduction_adduction, rotation):
        conv = lambda pair: tuple(degrees_to_internal(v) for v in pair)  # noqa: E731
        return cls(conv(flexion_extension), conv(abduction_adduction), conv(rotation))


def validate_pose(pose: JointPose, envelope: RomEnvelope) -> JointPose:
    if not envelope.contains(pose):
        raise PoseOutOfEnvelope(f"{pose} lies outside {envelope}")
    return pose


class Violation(NamedTuple):
    kind: str
    field: str
    message: str

    def __str__(self):
        return f"{self.kind}({self.field}): {self.message}"


def geometry_violations(g: ShoulderGeometry, envelope: RomEnvelope | None = None) -> list[Violation]:
    """Return every invariant the geometry breaks (empty when valid).

    Without ``envelope`` only the pointwise invariants are checked. With it,
    the deltoid anchors and the rotator insertion are also checked for reach
    over the whole envelope, so that no torque evaluation inside it can leave
    the domain of the trigonometric inverses.
    """
    out: list[Violation] = []
    values = {f.name: getattr(g, f.name) for f in fields(g)}
    bad = set()
    for name, v in values.items():
        comps = v if name in VECTOR_FIELDS else (v,)
        if not all(isinstance(c, (int, float)) and math.isfinite(c) for c in comps):
            out.append(Violation("NonFinite", name, f"{v!r} is not finite"))
            bad.add(name)
    for name in LENGTH_FIELDS:
        if name not in bad and not values[name] > 0:
            out.append(Violation("NonPositiveLength", name, f"{values[name]!r} m must be > 0"))
            bad.add(name)
    if "tendon_stiffness" not in bad and g.tendon_stiffness < 0:
        out.append(Violation("NegativeStiffness", "tendon_stiffness", f"{g.tendon_stiffness!r} N/m < 0"))

    def angle_in(name, lo, hi, lo_open, hi_open):
        if name in bad:
            return
        v = values[name]
        ok = (v > lo if lo_open else v >= lo) and (v < hi if hi_open else v <= hi)
        if not ok:
            lb, rb = "(" if lo_open else "[", ")" if hi_open else "]"
            out.append(Violation(
                "AngleOutOfRange", name,
                f"{math.degrees(v):.6g} deg outside {lb}{math.degrees(lo):g}, {math.degrees(hi):g}{rb} deg",
            ))
            bad.add(name)

    angle_in("socket_contact_angle", 0.0, math.pi, True, True)
    angle_in("rotator_insertion_angle", 0.0, math.pi / 2, False, True)
    angle_in("scapula_angle", 0.0, math.pi, False, False)

    for vec, dist in (("anterior_anchor", "anterior_anchor_distance"),
                      ("posterior_anchor", "posterior_anchor_distance")):
        if vec in bad or dist in bad:
            continue
        norm = math.sqrt(sum(c * c for c in values[vec]))
        if abs(norm - values[dist]) > 1e-9 * values[dist]:
            out.append(Violation(
                "InconsistentAnchor", vec,
                f"|{vec}| = {norm:.12g} m differs from {dist} = {values[dist]:.12g} m",
            ))
            bad.add(vec)

    rot = ("rotator_insertion_projection", "rotation_head_radius", "rotator_insertion_angle")
    if not bad.intersection(rot):
        l14, l18 = g.rotator_insertion_projection, g.rotation_head_radius
        if l14 > l18 * (1 + REL_SLACK):
            out.append(Violation(
                "InsertionOutsideHead", "rotator_insertion_projection",
                f"{l14!r} m exceeds the head radius {l18!r} m",
            ))
        elif l14 > l18 * math.cos(g.rotator_insertion_angle) * (1 + REL_SLACK):
            # the insertion's projection grows back to l14 / cos(angle) when the
            # joint rotates by minus the insertion angle
            out.append(Violation(
                "InsertionOutsideHead", "rotator_insertion_projection",
                f"{l14!r} m / cos(insertion angle) exceeds the head radius {l18!r} m",
            ))

    if envelope is not None:
        out.extend(_envelope_violations(g, envelope, bad))
    return out


def _envelope_violations(g, envelope, bad):
    out = []
    lo31, hi31 = envelope.flexion_extension
    lo32, hi32 = envelope.abduction_adduction
    t31 = np.append(np.arange(lo31, hi31, _REACH_STEP), hi31)
    t32 = np.append(np.arange(lo32, hi32, _REACH_STEP), hi32)
    T31, T32 = np.meshgrid(t31, t32, indexing="ij")
    # unit-length humeral direction parts, see torque.humeral_point
    v = np.stack([-np.sin(T32) * np.cos(T31), np.sin(T31), -np.cos(T32)])
    for vec, dist in (("anterior_anchor", "anterior_anchor_distance"),
                      ("posterior_anchor", "posterior_anchor_distance")):
        if vec in bad or dist in bad:
            continue
        a = np.asarray(getattr(g, vec), dtype=float) / getattr(g, dist)
        cos_m = np.tensordot(a, v, axes=1)
        # |d cos / d angle| <= |a| * |d v / d angle| <= 1 per axis; the nearest
        # grid node is at most half a step away along each axis
        slack = _REACH_STEP
        worst = float(np.max(np.abs(cos_m))) + slack
        if worst > 1.0:
            out.append(Violation(
                "AnchorOutOfReach", vec,
                f"|cos| of the anchor angle may reach {worst:.6g} > 1 inside the envelope",
            ))
    if "rotator_insertion_angle" not in bad:
        lo33, hi33 = envelope.rotation
        r0 = g.rotator_insertion_angle
        if not (-math.pi / 2 < r0 + lo33 and r0 + hi33 < math.pi / 2):
            out.append(Violation(
                "AngleOutOfRange", "rotator_insertion_angle",
                "insertion angle plus envelope rotation leaves (-90, 90) deg",
            ))
    return out


def validate_geometry(g: ShoulderGeometry, envelope: RomEnvelope | None = None) -> ShoulderGeometry:
    """Return ``g`` unchanged, or raise InvalidGeometry listing every violation."""
    violations = geometry_violations(g, envelope)
    if violations:
        raise InvalidGeometry(violations)
    return g


def anchor_from_angles(distance: float, inclination: float, azimuth: float) -> tuple[float, float, float]:
    """Anchor vector at ``distance`` from the head centre.

    ``inclination`` is measured from the upward z axis, ``azimuth`` from the x
    axis toward y.
    """
    s = math.sin(inclination)
    return (distance * s * math.cos(azimuth), distance * s * math.sin(azimuth), distance * math.cos(inclination))
