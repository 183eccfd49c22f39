"""Static stability and joint-torque analysis for a tendon-driven robotic shoulder."""

from .coupling import CouplingConfig, EquilibriumResult, coupled_elbow_angle, coupling_stability, equilibrium_pose, potential_height
from .errors import (
    CellError,
    ConfigError,
    DegenerateTriangle,
    DomainError,
    GlenoError,
    InvalidGeometry,
    NegativeRom,
    NoInteriorMinimum,
    NonFinite,
    NonFiniteObjective,
    PoseOutOfEnvelope,
    SingularConfiguration,
    UnknownMotion,
    ZeroElbowRadius,
    ZeroHumanSpan,
)
from .model import (
    JointPose,
    MuscleForces,
    RomEnvelope,
    ShoulderGeometry,
    degrees_to_internal,
    geometry_violations,
    internal_to_degrees,
    validate_geometry,
)
from .solver import Bracket, OptimResult, maximize, minimize
from .stability import (
    Criterion,
    StabilityReport,
    Status,
    dislocation_force,
    dislocation_status,
    max_dislocation_force,
    rom_coverage,
    rom_from_contact,
    self_lock_status,
)
from .torque import (
    CORRECTED,
    VERBATIM,
    abduction_torque,
    adduction_torque,
    extension_torque,
    flexion_torque,
    rotation_moment_arm,
    rotation_moment_arm_pair,
    rotation_torque,
    torque_surface,
)

__version__ = "0.1.0"
