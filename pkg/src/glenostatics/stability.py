"""Stability of the incomplete ball-and-socket joint.

Covers the axial dislocation force of a tendon-restrained humeral head, the
self-locking threshold of a wrapping tendon, the range-of-motion relations
for a given contact angle and the robot-vs-human ROM coverage.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import solver
from .errors import DomainError, NegativeRom, SingularConfiguration, ZeroHumanSpan
from .model import MOTION_GROUPS, RomEnvelope, ShoulderGeometry

DEFAULT_ANGLE_TOL_DEG = 1.0
DEFAULT_FORCE_TOL_N = 1.0


class Status(str, enum.Enum):
    STABLE = "Stable"
    MARGINAL = "Marginal"
    UNSTABLE = "Unstable"


class Criterion(str, enum.Enum):
    SELF_LOCK = "SelfLock"
    COUPLING_CONDITION = "CouplingCondition"
    DISLOCATION_PEAK = "DislocationPeak"

    @property
    def unit(self) -> str:
        return "N" if self is Criterion.DISLOCATION_PEAK else "deg"


@dataclass(frozen=True)
class StabilityReport:
    status: Status
    margin: float
    criterion: Criterion
    tolerance: float

    @property
    def unit(self) -> str:
        return self.criterion.unit

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "margin": self.margin,
            "unit": self.unit,
            "criterion": self.criterion.value,
            "tolerance": self.tolerance,
        }


def classify(margin: float, criterion: Criterion, tol: float) -> StabilityReport:
    """Marginal inside ``[-tol, tol]``, Stable above, Unstable below."""
    if not tol >= 0:
        raise ValueError(f"tolerance must be non-negative, got {tol!r}")
    if abs(margin) <= tol:
        status = Status.MARGINAL
    elif margin > tol:
        status = Status.STABLE
    else:
        status = Status.UNSTABLE
    return StabilityReport(status, float(margin), criterion, float(tol))


# --- dislocation -----------------------------------------------------------

def dislocation_geometry(theta_c, theta_h, head_radius, rest_length):
    """Tendon geometry when the contact edge has slid from ``theta_h`` to ``theta_c``.

    Returns ``(lss, ls, ls1, theta_a)``: the sideways offset of the tendon
    anchor, the stretched axial length, the tendon length and the tendon
    inclination. Works elementwise on arrays.
    """
    theta_c = np.asarray(theta_c, dtype=float)
    if np.any(theta_c > theta_h) or np.any(theta_c < 0):
        raise DomainError(f"contact angle must lie in [0, theta_h={theta_h!r}]")
    if not 0 <= theta_h < math.pi / 2:
        raise DomainError(f"theta_h must lie in [0, pi/2), got {theta_h!r}")
    if not (head_radius > 0 and rest_length > 0):
        raise DomainError("head radius and tendon rest length must be positive")
    lss = head_radius * (math.sin(theta_h) - np.sin(theta_c))
    ls = rest_length + head_radius * (np.cos(theta_c) - math.cos(theta_h))
    ls1 = np.hypot(ls, lss)
    theta_a = np.arctan2(lss, ls)
    if theta_c.ndim == 0:
        return float(lss), float(ls), float(ls1), float(theta_a)
    return lss, ls, ls1, theta_a


@dataclass(frozen=True)
class DislocationState:
    theta_c: float
    theta_h: float
    lss: float
    ls: float
    ls1: float
    theta_a: float
    tendon_force: float
    support_force: float
    applied_force: float


def dislocation_state(theta_c: float, theta_h: float, g: ShoulderGeometry) -> DislocationState:
    """Full force balance at one contact angle."""
    if theta_c >= math.pi / 2:
        raise SingularConfiguration("contact angle at or beyond 90 deg")
    lss, ls, ls1, theta_a = dislocation_geometry(theta_c, theta_h, g.head_radius, g.tendon_rest_length)
    ft = g.tendon_stiffness * (ls1 - g.tendon_rest_length)
    cos_a, sin_a = ls / ls1, lss / ls1
    fs = ft * cos_a / math.cos(theta_c)
    fe = ft * (sin_a + cos_a * math.tan(theta_c))
    return DislocationState(theta_c, theta_h, lss, ls, ls1, theta_a, ft, fs, fe)


def dislocation_force(theta_c, theta_h: float, g: ShoulderGeometry):
    """Axial force that holds the head at contact angle ``theta_c``.

    The support force is eliminated from the two-line force balance in closed
    form. Vectorised over ``theta_c``.
    """
    tc = np.asarray(theta_c, dtype=float)
    if np.any(tc >= math.pi / 2):
        raise SingularConfiguration("contact angle at or beyond 90 deg")
    lss, ls, ls1, _ = dislocation_geometry(tc, theta_h, g.head_radius, g.tendon_rest_length)
    ft = g.tendon_stiffness * (ls1 - g.tendon_rest_length)
    fe = ft * (lss / ls1 + (ls / ls1) * np.tan(tc))
    return float(fe) if tc.ndim == 0 else fe


def max_dislocation_force(
    theta_h: float,
    g: ShoulderGeometry,
    n: int = solver.DEFAULT_GRID_POINTS,
    tol: float = solver.DEFAULT_TOL,
):
    """Peak of the dislocation curve over ``theta_c`` in ``[0, theta_h]``.

    Returns ``(fe_max, theta_c_star)``.
    """
    if not 0 < theta_h < math.pi / 2:
        raise DomainError(f"theta_h must lie in (0, pi/2), got {theta_h!r}")
    res = solver.maximize(lambda tc: dislocation_force(tc, theta_h, g), solver.Bracket(0.0, theta_h), n=n, tol=tol)
    return res.fx, res.x


def dislocation_status(applied_force: float, theta_h: float, g: ShoulderGeometry,
                       tol: float = DEFAULT_FORCE_TOL_N) -> StabilityReport:
    """Compare an axial load against the peak the joint can hold, in newtons."""
    fe_max, _ = max_dislocation_force(theta_h, g)
    return classify(fe_max - applied_force, Criterion.DISLOCATION_PEAK, tol)


# --- self-locking -------------------------------------------------------------

def self_lock_status(theta_d: float, socket_half_angle: float = 0.0,
                     tol_deg: float = DEFAULT_ANGLE_TOL_DEG) -> StabilityReport:
    """Self-locking holds while the upper contact edge stays below the head centre.

    The margin, in degrees, is ``90 - (theta_d + socket_half_angle)``.
    """
    if not 0 <= theta_d <= math.pi:
        raise DomainError(f"scapula angle must lie in [0, pi], got {theta_d!r}")
    if not 0 <= socket_half_angle < math.pi / 2:
        raise DomainError(f"socket half angle must lie in [0, pi/2), got {socket_half_angle!r}")
    margin = 90.0 - math.degrees(theta_d + socket_half_angle)
    return classify(margin, Criterion.SELF_LOCK, tol_deg)


# --- range of motion ------------------------------------------------------------

def rom_from_contact(theta_fr: float, theta_0r: float, theta_fa: float, theta_0a: float):
    """Rotation and abduction ranges left over by a socket of given contact angles.

    Returns ``(rotation_range, abduction_range)``.
    """
    if theta_fr < 2 * theta_0r:
        raise NegativeRom(f"rotation range would be negative: {theta_fr!r} < 2 * {theta_0r!r}")
    if theta_fa < theta_0a:
        raise NegativeRom(f"abduction range would be negative: {theta_fa!r} < {theta_0a!r}")
    return theta_fr - 2 * theta_0r, theta_fa - theta_0a


def rom_coverage(robot: RomEnvelope, human: RomEnvelope) -> dict[str, float]:
    """Robot span as a percentage of human span, per motion group."""
    out = {}
    for motion in MOTION_GROUPS:
        h = human.span(motion)
        if h == 0:
            raise ZeroHumanSpan(motion)
        out[motion] = 100.0 * robot.span(motion) / h
    return out
