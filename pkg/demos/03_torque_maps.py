"""
Joint torque across the range of motion
=======================================

Evaluates each torque map on a coarse grid and prints where it peaks.
"""

import numpy as np

from glenostatics.config import load_reference_config
from glenostatics.torque import torque_surface

cfg = load_reference_config()
coarse = {
    "flexion": (np.arange(-40, 66, 5.0), np.arange(-32, 105, 8.0)),
    "extension": (np.arange(-40, 66, 5.0), np.arange(-32, 105, 8.0)),
    "abduction": (np.arange(-60, 61, 10.0), None),
    "adduction": (np.arange(-32, 105, 8.0), None),
    "rotation": (np.arange(0, 91, 10.0), np.arange(-90, 41, 10.0)),
}

for motion, (a, b) in coarse.items():
    surf = torque_surface(motion, np.radians(a), None if b is None else np.radians(b), cfg.forces, cfg.geometry)
    peak, where = surf.max()
    angles = ", ".join(f"{name} {np.degrees(x):.0f}" for name, x in zip(surf.axis_names, where))
    print(f"{motion:10s} max {peak:6.2f} N m at {angles} deg")

# the abductor map printed in full: the middle deltoid share falls off slowest
surf = torque_surface("abduction", np.radians(coarse["abduction"][0]), forces=cfg.forces, g=cfg.geometry)
print("\nrotation  supra+biceps  deltoid  total")
for x, b1, b2, t in zip(coarse["abduction"][0], surf.components["tau_b1"], surf.components["tau_b2"], surf.values):
    print(f"{x:8.0f}  {b1:12.2f}  {b2:7.2f}  {t:5.2f}")
