"""Joint torque as a function of pose for the four shoulder motion groups.

Coordinates follow the flexion/extension construction: origin at the head
centre, the arm hangs along -z, abduction swings it toward -x and flexion
toward +y. Tendon tensions are taken as given constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import CellError, DegenerateTriangle, DomainError, NonFinite, PoseOutOfEnvelope, UnknownMotion
from .model import REL_SLACK, MuscleForces, ShoulderGeometry

VERBATIM = "verbatim"
CORRECTED = "corrected"
ARM_MODES = (VERBATIM, CORRECTED)

DEGENERATE_LENGTH = 1e-12
ABDUCTION_ROTATION_LIMIT = math.radians(60.0)


def _check_mode(mode):
    if mode not in ARM_MODES:
        raise ValueError(f"unknown moment-arm mode {mode!r}; expected one of {ARM_MODES}")


# --- flexion / extension ------------------------------------------------------

def humeral_point(theta31: float, theta32: float, length: float) -> np.ndarray:
    """Deltoid attachment on the humerus after abduction then flexion.

    The closed form is used as is; it is not a rigid rotation, so its norm is
    ``length`` only when ``theta31 == 0``.
    """
    return np.array([
        -length * math.cos(math.pi / 2 - theta32) * math.cos(theta31),
        length * math.sin(theta31),
        -length * math.sin(math.pi / 2 - theta32),
    ])


def deltoid_moment_arm(theta31, theta32, anchor, anchor_distance, humeral_distance, mode=VERBATIM) -> float:
    """Lever arm of a deltoid head running from its humeral attachment to ``anchor``.

    ``verbatim`` halves the point-to-line distance, as the published closed
    form does; ``corrected`` returns the full distance.
    """
    _check_mode(mode)
    l5, l6 = anchor_distance, humeral_distance
    n = humeral_point(theta31, theta32, l6)
    cos_m = float(np.dot(anchor, n)) / (l5 * l6)
    if abs(cos_m) > 1.0 + REL_SLACK:
        raise DomainError(f"anchor angle cosine {cos_m:.12g} outside [-1, 1]")
    distance = triangle_lever(l5, l6, min(1.0, max(-1.0, cos_m)))
    return distance / 2.0 if mode == VERBATIM else distance


def triangle_lever(a: float, b: float, cos_angle: float) -> float:
    """Height over the third side of a triangle with sides ``a``, ``b`` and included angle.

    That is the distance from the shared vertex to the line through the other
    two, found from the cosine rule for the third side and the area.
    """
    sin_angle = math.sqrt(max(1.0 - cos_angle * cos_angle, 0.0))
    third = math.sqrt(max(a * a + b * b - 2.0 * a * b * cos_angle, 0.0))
    if third <= DEGENERATE_LENGTH:
        raise DegenerateTriangle("anchor and humeral attachment coincide")
    return a * b * sin_angle / third


def point_to_line_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Distance from the origin to the line through ``p`` and ``q``."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    return float(np.linalg.norm(np.cross(p, q)) / np.linalg.norm(p - q))


def flexion_torque(theta31, theta32, force, g: ShoulderGeometry, mode=VERBATIM) -> float:
    arm = deltoid_moment_arm(theta31, theta32, g.anterior_anchor, g.anterior_anchor_distance,
                             g.deltoid_humeral_distance, mode)
    return force * arm


def extension_torque(theta31, theta32, force, g: ShoulderGeometry, mode=VERBATIM) -> float:
    arm = deltoid_moment_arm(theta31, theta32, g.posterior_anchor, g.posterior_anchor_distance,
                             g.deltoid_humeral_distance, mode)
    return force * arm


def mirrored_anchor(anchor):
    """Reflect an anchor through the y = 0 plane (anterior <-> posterior)."""
    x, y, z = anchor
    return (x, -y, z)


# --- abduction ------------------------------------------------------------------

class AbductionTorque(NamedTuple):
    supraspinatus_biceps: float
    deltoid_middle: float
    total: float


def notch_bend_cosine(theta33: float, notch_distance: float, lever: float) -> float:
    """Cosine of the bend of the supraspinatus/biceps path at the acromial notch."""
    along = notch_distance + lever * math.cos(theta33)
    across = lever * math.sin(theta33)
    return along / math.hypot(along, across)


def abduction_torque(theta33, supraspinatus, biceps, deltoid_middle, g: ShoulderGeometry) -> AbductionTorque:
    """Abduction torque from the three abductors at axial rotation ``theta33``.

    The deltoid wrap angle is taken as half the axial rotation.
    """
    if abs(theta33) > ABDUCTION_ROTATION_LIMIT * (1 + REL_SLACK):
        raise PoseOutOfEnvelope(f"abduction model covers |rotation| <= 60 deg, got {math.degrees(theta33):.6g}")
    lever = g.abductor_lever
    b1 = (supraspinatus + biceps) * lever * notch_bend_cosine(theta33, g.notch_distance, lever)
    b2 = deltoid_middle * lever * math.cos(0.5 * theta33)
    return AbductionTorque(b1, b2, b1 + b2)


def abduction_contributions(theta33, forces: MuscleForces, g: ShoulderGeometry) -> dict[str, float]:
    """Torque of each abductor on its own, splitting the shared term by tension."""
    lever = g.abductor_lever
    bend = notch_bend_cosine(theta33, g.notch_distance, lever)
    return {
        "supraspinatus": forces.supraspinatus * lever * bend,
        "biceps_long_head": forces.biceps_long_head * lever * bend,
        "deltoid_middle": abduction_torque(theta33, 0.0, 0.0, forces.deltoid_middle, g).deltoid_middle,
    }


# --- adduction --------------------------------------------------------------------

def adduction_torque(theta32, force, g: ShoulderGeometry) -> float:
    return force * g.triceps_anchor_distance * math.cos(g.triceps_initial_angle - theta32)


# --- rotation ---------------------------------------------------------------------

_QUADRANT_SINCOS = ((0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0))


def _sincos(theta: float) -> tuple[float, float]:
    """``(sin, cos)`` that are exact when ``theta`` is a float multiple of pi/2.

    The rotator lever takes a square root of a difference that vanishes at
    90 deg abduction; cos(fl(pi/2)) = 6e-17 would otherwise leave a spurious
    lever of a few 1e-10 m.
    """
    k = round(theta / (math.pi / 2))
    if theta == k * (math.pi / 2):
        return _QUADRANT_SINCOS[k % 4]
    return math.sin(theta), math.cos(theta)


@dataclass(frozen=True)
class RotationArm:
    """Intermediate lengths of the rotator-cuff lever construction."""

    insertion_projection: float
    rise: float
    centre_offset: float
    circle_radius: float
    tendon_span: float
    tendon_angle: float
    moment_arm: float


def rotation_arm_details(theta32, theta33, g: ShoulderGeometry) -> RotationArm:
    if not -REL_SLACK <= theta32 <= math.pi / 2 + REL_SLACK:
        raise PoseOutOfEnvelope(f"rotation model needs abduction in [0, 90] deg, got {math.degrees(theta32):.6g}")
    r0 = g.rotator_insertion_angle
    if not -math.pi / 2 < r0 + theta33 < math.pi / 2:
        raise PoseOutOfEnvelope("insertion angle plus rotation must stay inside (-90, 90) deg")
    l11, l18 = g.rotator_motor_distance, g.rotation_head_radius
    # the insertion's projection shrinks as the head rotates under it
    l14 = g.rotator_insertion_projection * math.cos(r0 + theta33) / math.cos(r0)
    sin32, cos32 = _sincos(theta32)
    l15 = l14 * sin32
    l16 = l15 * (l11 / (l11 + l14 * cos32))
    if l16 > l18 * (1 + REL_SLACK):
        raise DomainError(f"circle centre offset {l16:.12g} m exceeds the head radius {l18:.12g} m")
    l12 = math.sqrt(max(l18 * l18 - l16 * l16, 0.0))
    # cos(pi - theta32) = -cos(theta32), sin(pi - theta32) = sin(theta32)
    l17 = math.sqrt(l11 * l11 + l14 * l14 + 2.0 * l11 * l14 * cos32)
    s = l11 * sin32 / l17
    theta_n = math.asin(min(1.0, s))
    return RotationArm(l14, l15, l16, l12, l17, theta_n, l12 * math.cos(theta_n))


def rotation_moment_arm(theta32, theta33, g: ShoulderGeometry) -> float:
    return rotation_arm_details(theta32, theta33, g).moment_arm


def rotation_torque(theta32, theta33, force, g: ShoulderGeometry) -> float:
    return force * rotation_moment_arm(theta32, theta33, g)


def _axis_rotation(axis, angle):
    k = np.asarray(axis, float)
    k = k / np.linalg.norm(k)
    cross = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(angle) * cross + (1.0 - math.cos(angle)) * cross @ cross


def rotation_tendon_length(theta32, theta33, g: ShoulderGeometry) -> float:
    """Path length of the subscapularis tendon over the humeral head.

    Independent 3-D model: the motor sits at ``(-l11, 0, 0)``, the insertion
    lies on the head surface at the insertion angle in front of the lateral
    axis, abduction turns about y and axial rotation turns about the humeral
    axis. The tendon stays in the plane through the motor that contains the
    insertion and the anterior direction; it runs straight to its tangent
    point on that plane's circle cut from the head, then along the circle.
    """
    l11, l18, r0 = g.rotator_motor_distance, g.rotation_head_radius, g.rotator_insertion_angle
    motor = np.array([-l11, 0.0, 0.0])
    front = np.array([0.0, 1.0, 0.0])
    abduct = _axis_rotation((0.0, -1.0, 0.0), theta32)
    humeral_axis = abduct @ np.array([0.0, 0.0, -1.0])
    rest = l18 * np.array([math.cos(r0), math.sin(r0), 0.0])
    insertion = _axis_rotation(-humeral_axis, theta33) @ (abduct @ rest)

    normal = np.cross(insertion - motor, front)
    normal /= np.linalg.norm(normal)
    centre = float(normal @ motor) * normal
    rho2 = l18 * l18 - float(centre @ centre)
    if rho2 <= 0:
        raise DomainError("tendon plane misses the head")
    rho = math.sqrt(rho2)
    to_motor = motor - centre
    a = float(np.linalg.norm(to_motor))
    if a <= rho:
        raise DomainError("motor lies inside the head")
    e1 = to_motor / a
    e2 = np.cross(normal, e1)
    if e2 @ front < 0:
        e2 = -e2
    tangent_angle = math.acos(rho / a)
    rel = insertion - centre
    insertion_angle = math.atan2(float(rel @ e2), float(rel @ e1))
    arc = (insertion_angle - tangent_angle) % (2 * math.pi)
    if arc > 1.5 * math.pi:
        raise DomainError("tendon does not wrap the head at this pose")
    return math.sqrt(a * a - rho2) + rho * arc


def moment_arm_virtual_work(tendon_length: Callable[[float], float], theta: float, h: float = 1e-6) -> float:
    """Moment arm as ``|dL/dtheta|`` by central difference."""
    if not 1e-7 <= h <= 1e-3:
        raise ValueError(f"step must lie in [1e-7, 1e-3] rad, got {h!r}")
    lp, lm = tendon_length(theta + h), tendon_length(theta - h)
    arm = abs(lp - lm) / (2.0 * h)
    if not math.isfinite(arm):
        raise NonFinite(f"tendon length derivative is not finite at {theta!r}")
    return arm


@dataclass(frozen=True)
class MomentArmPair:
    closed_form: float
    virtual_work: float

    @property
    def ratio(self) -> float:
        return self.virtual_work / self.closed_form if self.closed_form else math.inf


def rotation_moment_arm_pair(theta32, theta33, g: ShoulderGeometry, h: float = 1e-6) -> MomentArmPair:
    vw = moment_arm_virtual_work(lambda t: rotation_tendon_length(theta32, t, g), theta33, h)
    return MomentArmPair(rotation_moment_arm(theta32, theta33, g), vw)


# --- surfaces -----------------------------------------------------------------------

MOTIONS = ("flexion", "extension", "abduction", "adduction", "rotation")
# motion -> (axis names, muscle)
MOTION_AXES = {
    "flexion": (("flexion", "abduction"), "deltoid_anterior_posterior"),
    "extension": (("flexion", "abduction"), "deltoid_anterior_posterior"),
    "abduction": (("rotation",), "supraspinatus+biceps_long_head+deltoid_middle"),
    "adduction": (("abduction",), "triceps_long_head"),
    "rotation": (("abduction", "rotation"), "subscapularis"),
}


@dataclass(frozen=True)
class TorqueSurface:
    motion: str
    axis_names: tuple[str, ...]
    axes: tuple[np.ndarray, ...]
    values: np.ndarray
    muscle: str
    force_used: float
    components: dict = field(default_factory=dict)

    def max(self):
        """Largest torque and its axis angles; first occurrence in row-major order."""
        i = int(np.argmax(self.values))
        idx = np.unravel_index(i, self.values.shape)
        return float(self.values[idx]), tuple(float(ax[j]) for ax, j in zip(self.axes, idx))


def _scalar_torque(motion, forces, g, mode):
    if motion == "flexion":
        return lambda a, b: flexion_torque(a, b, forces.deltoid_anterior_posterior, g, mode)
    if motion == "extension":
        return lambda a, b: extension_torque(a, b, forces.deltoid_anterior_posterior, g, mode)
    if motion == "rotation":
        return lambda a, b: rotation_torque(a, b, forces.subscapularis, g)
    if motion == "adduction":
        return lambda a: adduction_torque(a, forces.triceps_long_head, g)
    if motion == "abduction":
        return lambda a: abduction_torque(a, forces.supraspinatus, forces.biceps_long_head, forces.deltoid_middle, g)
    raise UnknownMotion(f"unknown motion {motion!r}; expected one of {MOTIONS}")


def torque_surface(motion: str, grid1, grid2=None, forces: MuscleForces | None = None,
                   g: ShoulderGeometry | None = None, mode: str = VERBATIM) -> TorqueSurface:
    """Evaluate one torque map over a rectangular grid of joint angles.

    Cells are filled in row-major order. A domain error in any cell is
    re-raised as CellError carrying the cell index and angles.
    """
    if motion not in MOTION_AXES:
        raise UnknownMotion(f"unknown motion {motion!r}; expected one of {MOTIONS}")
    if g is None:
        raise ValueError("torque_surface needs a geometry")
    _check_mode(mode)
    forces = forces or MuscleForces()
    names, muscle = MOTION_AXES[motion]
    fn = _scalar_torque(motion, forces, g, mode)
    ax1 = np.asarray(grid1, dtype=float).ravel()
    components = {}

    if len(names) == 2:
        if grid2 is None:
            raise ValueError(f"{motion} surface needs a second grid ({names[1]})")
        ax2 = np.asarray(grid2, dtype=float).ravel()
        values = np.empty((ax1.size, ax2.size))
        for i, a in enumerate(ax1):
            for j, b in enumerate(ax2):
                try:
                    values[i, j] = fn(float(a), float(b))
                except DomainError as e:
                    raise CellError((i, j), (float(a), float(b)), e) from e
        axes = (ax1, ax2)
    else:
        if grid2 is not None:
            raise ValueError(f"{motion} is a one-angle map; got a second grid")
        values = np.empty(ax1.size)
        b1 = np.empty(ax1.size) if motion == "abduction" else None
        b2 = np.empty(ax1.size) if motion == "abduction" else None
        for i, a in enumerate(ax1):
            try:
                out = fn(float(a))
            except DomainError as e:
                raise CellError((i,), (float(a),), e) from e
            if motion == "abduction":
                b1[i], b2[i], values[i] = out
            else:
                values[i] = out
        if motion == "abduction":
            components = {"tau_b1": b1, "tau_b2": b2}
        axes = (ax1,)

    force_used = {
        "flexion": forces.deltoid_anterior_posterior,
        "extension": forces.deltoid_anterior_posterior,
        "abduction": forces.supraspinatus + forces.biceps_long_head + forces.deltoid_middle,
        "adduction": forces.triceps_long_head,
        "rotation": forces.subscapularis,
    }[motion]
    if not np.all(np.isfinite(values)):
        raise NonFinite(f"{motion} surface has non-finite entries")
    return TorqueSurface(motion, names, axes, values, muscle, force_used, components)
