"""Back-solve unmeasured stiffness and lever lengths from target peak values.

Each routine returns a new geometry; none mutates its input. Running a
routine on its own output reproduces that output to within 1e-9 relative.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from .model import MuscleForces, ShoulderGeometry
from .stability import max_dislocation_force
from .torque import VERBATIM, torque_surface


def calibrate_stiffness(g: ShoulderGeometry, target: float, theta_h: float) -> ShoulderGeometry:
    """Tendon stiffness giving a peak dislocation force of ``target`` at ``theta_h``.

    The force is proportional to the stiffness, so one rescale is exact.
    """
    if not target > 0:
        raise ValueError(f"target force must be positive, got {target!r}")
    g = g if g.tendon_stiffness > 0 else g.replace(tendon_stiffness=1.0)
    fe_max, _ = max_dislocation_force(theta_h, g)
    return g.replace(tendon_stiffness=g.tendon_stiffness * target / fe_max)


def calibrate_abduction(g: ShoulderGeometry, forces: MuscleForces, target: float) -> ShoulderGeometry:
    """Abductor lever so that all three abductors at zero rotation give ``target``."""
    total = forces.supraspinatus + forces.biceps_long_head + forces.deltoid_middle
    return g.replace(abductor_lever=target / total)


def calibrate_adduction(g: ShoulderGeometry, forces: MuscleForces, target: float) -> ShoulderGeometry:
    """Triceps lever so that the peak (at the initial angle) equals ``target``."""
    return g.replace(triceps_anchor_distance=target / forces.triceps_long_head)


def calibrate_rotation(g: ShoulderGeometry, forces: MuscleForces, target: float) -> ShoulderGeometry:
    """Scale the whole rotator construction so the torque at zero abduction is ``target``.

    At zero abduction the lever equals the head radius; the construction is
    homogeneous in its lengths, so scaling all three keeps its shape.
    """
    s = target / (forces.subscapularis * g.rotation_head_radius)
    return g.replace(
        rotation_head_radius=g.rotation_head_radius * s,
        rotator_insertion_projection=g.rotator_insertion_projection * s,
        rotator_motor_distance=g.rotator_motor_distance * s,
    )


def _scaled_anchor(g, side, s):
    vec, dist = f"{side}_anchor", f"{side}_anchor_distance"
    return g.replace(**{vec: tuple(s * c for c in getattr(g, vec)), dist: getattr(g, dist) * s})


def calibrate_deltoid(g: ShoulderGeometry, forces: MuscleForces, target: float, motion: str,
                      grid1, grid2, mode: str = VERBATIM) -> ShoulderGeometry:
    """Scale the flexion or extension anchor so the surface maximum equals ``target``.

    For a fixed anchor direction the lever grows with the anchor distance
    while that distance stays below the humeral attachment distance, so the
    surface maximum is monotone in the scale and a bracketed root find
    applies.
    """
    side = {"flexion": "anterior", "extension": "posterior"}[motion]
    grid1, grid2 = np.asarray(grid1, float), np.asarray(grid2, float)

    def excess(s):
        gs = _scaled_anchor(g, side, s)
        return torque_surface(motion, grid1, grid2, forces, gs, mode).max()[0] - target

    dist = getattr(g, f"{side}_anchor_distance")
    hi = 0.999 * g.deltoid_humeral_distance / dist
    lo = 1e-6 * hi
    if excess(hi) < 0:
        raise ValueError(f"{motion} target {target!r} N m is out of reach of this anchor direction")
    s = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    if math.isclose(s, 1.0, rel_tol=1e-12, abs_tol=0.0):
        return g
    return _scaled_anchor(g, side, s)
