"""
Where does a biceps-coupled arm come to rest?
=============================================

With the long head of the biceps inextensible, the elbow follows the humerus.
The arm settles at the humerus angle of lowest potential height; the socket
keeps it only while the coupling condition holds.
"""

import numpy as np

from glenostatics.config import load_reference_config
from glenostatics.coupling import CouplingConfig, equilibrium_pose, potential_height

base = CouplingConfig.from_geometry(load_reference_config().geometry)

# height profile of the reference arm
for deg in range(-90, 91, 30):
    print(f"theta_e {deg:4d} deg -> H = {potential_height(np.radians(deg), base):+.4f} m")

# resting pose as the scapula tilts
print("\nscapula  theta_e   theta_f   status")
for theta_d in (0, 20, 40, 60):
    cfg = CouplingConfig(base.head_moment_radius, base.elbow_moment_arm, base.upper_arm_length,
                         base.forearm_lever, np.radians(theta_d), base.socket_contact_angle)
    res = equilibrium_pose(cfg)
    print(f"{theta_d:6d}  {np.degrees(res.theta_e):8.2f}  {np.degrees(res.theta_f):8.2f}   "
          f"{res.stability.status.value} (margin {res.stability.margin:.1f} deg)")
