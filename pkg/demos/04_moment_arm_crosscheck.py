"""
Checking the rotator lever by virtual work
==========================================

The closed-form rotator lever is compared with the derivative of the tendon
path length from an independent 3-D wrapping model.
"""

import numpy as np

from glenostatics.config import load_reference_config
from glenostatics.torque import rotation_moment_arm_pair

g = load_reference_config().geometry

print("abduction  closed form   virtual work   ratio")
for deg in range(0, 61, 10):
    pair = rotation_moment_arm_pair(np.radians(deg), 0.0, g)
    print(f"{deg:9d}  {1e3 * pair.closed_form:8.3f} mm  {1e3 * pair.virtual_work:9.3f} mm  {pair.ratio:7.4f}")

# with the insertion on the lateral axis the planar construction drifts from
# the 3-D path; a 40 deg insertion angle keeps them together
flat = g.replace(rotator_insertion_angle=0.0, rotator_insertion_projection=g.rotation_head_radius)
pair = rotation_moment_arm_pair(np.radians(30), 0.0, flat)
print(f"\nzero insertion angle at 30 deg abduction: ratio {pair.ratio:.3f}")
