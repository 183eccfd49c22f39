"""Shoulder stabilisation by a tendon spanning shoulder and elbow.

With an inextensible biceps long head the elbow angle follows the humerus
angle; the arm settles where the load point is lowest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import solver
from .errors import NoInteriorMinimum, ZeroElbowRadius
from .model import ShoulderGeometry
from .stability import DEFAULT_ANGLE_TOL_DEG, Criterion, StabilityReport, classify

DEFAULT_BRACKET = (-math.pi / 2, math.pi / 2)


@dataclass(frozen=True)
class CouplingConfig:
    head_moment_radius: float
    elbow_moment_arm: float
    upper_arm_length: float
    forearm_lever: float
    scapula_angle: float
    socket_contact_angle: float

    def __post_init__(self):
        if not self.elbow_moment_arm > 0:
            raise ZeroElbowRadius(f"elbow moment arm must be positive, got {self.elbow_moment_arm!r}")
        if not (self.upper_arm_length > 0 and self.forearm_lever > 0):
            raise ValueError("segment lengths must be positive")

    @classmethod
    def from_geometry(cls, g: ShoulderGeometry) -> "CouplingConfig":
        return cls(
            g.head_moment_radius,
            g.elbow_moment_arm,
            g.upper_arm_length,
            g.forearm_lever,
            g.scapula_angle,
            g.socket_contact_angle,
        )


def coupled_elbow_angle(theta_d: float, theta_e: float, r1: float, r2: float) -> float:
    """Elbow angle forced by a constant-length tendon over both joints."""
    if r2 == 0:
        raise ZeroElbowRadius("elbow moment arm is zero")
    return (theta_d + theta_e) * r1 / r2


def potential_height(theta_e: float, cfg: CouplingConfig) -> float:
    theta_f = coupled_elbow_angle(cfg.scapula_angle, theta_e, cfg.head_moment_radius, cfg.elbow_moment_arm)
    return cfg.upper_arm_length * math.sin(theta_e) + cfg.forearm_lever * math.sin(theta_f - theta_e)


def coupling_stability(theta_d: float, theta_s: float, theta_e: float,
                       tol_deg: float = DEFAULT_ANGLE_TOL_DEG) -> StabilityReport:
    """Margin ``180 - (theta_d - theta_s + theta_e)`` in degrees."""
    margin = 180.0 - math.degrees(theta_d - theta_s + theta_e)
    return classify(margin, Criterion.COUPLING_CONDITION, tol_deg)


@dataclass(frozen=True)
class EquilibriumResult:
    theta_e: float
    theta_f: float
    height: float
    stability: StabilityReport
    at_boundary: bool
    converged: bool


def equilibrium_pose(
    cfg: CouplingConfig,
    bracket=DEFAULT_BRACKET,
    tol: float = solver.DEFAULT_TOL,
    n: int = solver.DEFAULT_GRID_POINTS,
    tol_deg: float = DEFAULT_ANGLE_TOL_DEG,
    strict: bool = False,
) -> EquilibriumResult:
    """Humerus angle of lowest potential energy inside ``bracket``.

    A minimum on the bracket edge is returned with ``at_boundary=True``;
    pass ``strict=True`` to raise NoInteriorMinimum instead.
    """
    br = solver.Bracket.of(*bracket)
    res = solver.minimize(lambda te: potential_height(te, cfg), br, n=n, tol=tol)
    if strict and res.at_boundary:
        raise NoInteriorMinimum(res.x, (br.lo, br.hi))
    theta_f = coupled_elbow_angle(cfg.scapula_angle, res.x, cfg.head_moment_radius, cfg.elbow_moment_arm)
    report = coupling_stability(cfg.scapula_angle, cfg.socket_contact_angle, res.x, tol_deg)
    return EquilibriumResult(res.x, theta_f, res.fx, report, res.at_boundary, res.converged)
