"""End-to-end acceptance suite; each test prints one PASS/FAIL line."""

import csv
import json
import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from glenostatics import config
from glenostatics.cli import main
from glenostatics.coupling import CouplingConfig, coupling_stability, equilibrium_pose, potential_height
from glenostatics.model import MuscleForces
from glenostatics.solver import DEFAULT_TOL
from glenostatics.stability import Status, dislocation_force, max_dislocation_force, self_lock_status
from glenostatics.torque import (
    abduction_contributions,
    deltoid_moment_arm,
    humeral_point,
    point_to_line_distance,
    rotation_moment_arm_pair,
    rotation_torque,
    torque_surface,
)

D = math.radians


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n  acceptance {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        assert ok, detail
    return _report


def test_01_dislocation_peak(reference, report):
    start = time.perf_counter()
    fe_max, _ = max_dislocation_force(D(30), reference.geometry)
    elapsed = time.perf_counter() - start
    report(1, "dislocation peak at 30 deg", abs(fe_max - 400.0) <= 1.0 and elapsed < 1.0,
           f"{fe_max:.6f} N in {elapsed * 1e3:.1f} ms")


def _peaks(g):
    return [max_dislocation_force(D(t), g)[0] for t in (20, 30, 40, 50)]


@settings(max_examples=60, deadline=None)
@given(radius=st.floats(0.005, 0.08), rest=st.floats(0.01, 0.2), k=st.floats(1.0, 1e7))
def test_02_monotone_property(geometry, radius, rest, k):
    peaks = _peaks(geometry.replace(head_radius=radius, tendon_rest_length=rest, tendon_stiffness=k))
    assert all(b > a for a, b in zip(peaks, peaks[1:]))


def test_02_dislocation_monotone(reference, report):
    peaks = _peaks(reference.geometry)
    report(2, "peak strictly increasing in theta_h", all(b > a for a, b in zip(peaks, peaks[1:])),
           ", ".join(f"{p:.1f}" for p in peaks) + " N (plus a 60-draw property test)")


def test_03_onset_zero(reference, report):
    rng = np.random.default_rng(3)
    bad = 0
    for _ in range(100):
        th = rng.uniform(D(0.5), D(85))
        g = reference.geometry.replace(head_radius=rng.uniform(0.005, 0.08),
                                       tendon_rest_length=rng.uniform(0.01, 0.2),
                                       tendon_stiffness=rng.uniform(1.0, 1e7))
        bad += dislocation_force(th, th, g) != 0.0
    report(3, "zero force at onset", bad == 0, f"{100 - bad}/100 draws exactly 0")


TABLE = {"flexion": 35.0, "extension": 34.7, "abduction": 54.0, "adduction": 35.0, "rotation": 18.0}


def test_04_torque_maxima(reference, report):
    got = {}
    for motion in TABLE:
        specs = reference.sweeps["torque"][motion]
        g1 = np.radians(config.grid_from_spec(specs["axis1_deg"]))
        g2 = np.radians(config.grid_from_spec(specs["axis2_deg"])) if "axis2_deg" in specs else None
        got[motion] = torque_surface(motion, g1, g2, reference.forces, reference.geometry).max()[0]
    worst = max(abs(got[m] / TABLE[m] - 1) for m in TABLE)
    report(4, "torque maxima within 2%", worst <= 0.02,
           ", ".join(f"{m} {got[m]:.3f}" for m in TABLE) + f" N m (worst {100 * worst:.2g}%)")


def test_05_rotation_null(geometry, report):
    g = geometry.replace(rotator_insertion_angle=0.0, rotator_insertion_projection=geometry.rotation_head_radius)
    tau = rotation_torque(D(90), 0.0, 600.0, g)
    report(5, "rotation torque vanishes at 90 deg abduction", tau <= 1e-9, f"{tau:.3g} N m")


def test_06_abduction_decomposition(reference, report):
    parts = abduction_contributions(0.0, reference.forces, reference.geometry)
    grid = np.radians(np.linspace(-60, 60, 121))
    peak, (at,) = torque_surface("abduction", grid, forces=reference.forces, g=reference.geometry).max()
    ok = parts["deltoid_middle"] > max(parts["supraspinatus"], parts["biceps_long_head"]) and at == 0.0
    report(6, "deltoid (middle) contributes most; peak at zero rotation", ok,
           f"deltoid {parts['deltoid_middle']:.1f}, supraspinatus {parts['supraspinatus']:.1f}, "
           f"biceps {parts['biceps_long_head']:.1f} N m; max {peak:.2f} N m at {math.degrees(at):g} deg")


def test_07_rom_coverage(tmp_path, report):
    assert main(["rom", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "rom.csv", newline="") as fh:
        got = {r["motion"]: float(r["coverage_pct"]) for r in csv.DictReader(fh)}
    quoted = {"flexion_extension": 46.25, "abduction_adduction": 105.43, "rotation": 99.23}
    worst = max(abs(got[m] - quoted[m]) for m in quoted)
    report(7, "range-of-motion coverage", worst <= 0.5,
           " / ".join(f"{got[m]:.2f}%" for m in quoted) + f" (worst {worst:.3f} pp)")


def test_08_stability_fixtures(reference, report):
    lock = [self_lock_status(D(t), 0.0).status.value[0] for t in (0, 30, 71, 90, 120, 165)]
    cases = reference.sweeps["coupling"]["cases"]
    coupling = {}
    for c in cases:
        d, s, e = c["theta_d_deg"], c["theta_s_deg"], c["theta_e_deg"]
        coupling[round(d - s + e)] = coupling_stability(D(d), D(s), D(e)).status
    ok = (lock == list("SSSMUU")
          and coupling[195] is Status.UNSTABLE and coupling[212] is Status.UNSTABLE
          and sum(1 for k, v in coupling.items() if k < 180 and v is Status.STABLE) == 6)
    report(8, "self-lock and coupling fixtures", ok,
           f"self-lock {''.join(lock)}; coupling " + ", ".join(f"{k}:{v.value}" for k, v in sorted(coupling.items())))


def test_09_equilibrium_oracle(report):
    rng = np.random.default_rng(9)
    n_grid = 10**5
    xs = np.linspace(-math.pi / 2, math.pi / 2, n_grid)
    step = math.pi / (n_grid - 1)
    worst_x, worst_grad = 0.0, 0.0
    for _ in range(100):
        cfg = CouplingConfig(rng.uniform(0.01, 0.04), rng.uniform(0.03, 0.07), rng.uniform(0.2, 0.4),
                             rng.uniform(0.1, 0.35), rng.uniform(0.0, D(40)), D(20))
        ratio = cfg.head_moment_radius / cfg.elbow_moment_arm
        h = cfg.upper_arm_length * np.sin(xs) + cfg.forearm_lever * np.sin((cfg.scapula_angle + xs) * ratio - xs)
        res = equilibrium_pose(cfg)
        worst_x = max(worst_x, abs(res.theta_e - xs[np.argmin(h)]) / max(DEFAULT_TOL, step))
        if not res.at_boundary:
            tf = (cfg.scapula_angle + res.theta_e) * ratio
            grad = (cfg.upper_arm_length * math.cos(res.theta_e)
                    + cfg.forearm_lever * math.cos(tf - res.theta_e) * (ratio - 1))
            worst_grad = max(worst_grad, abs(grad) / cfg.upper_arm_length)
    report(9, "equilibrium matches 1e5-point grid", worst_x <= 1.0 and worst_grad <= 1e-4,
           f"worst offset {worst_x:.3f} grid steps, worst |dH/dtheta|/l1 {worst_grad:.2e}")


def test_10_virtual_work(reference, report):
    g = reference.geometry
    ratios = [rotation_moment_arm_pair(D(t), 0.0, g).ratio for t in range(0, 61)]
    worst = max(abs(r - 1) for r in ratios)
    halves = []
    for t32 in range(-32, 105, 4):
        n = humeral_point(0.0, D(t32), g.deltoid_humeral_distance)
        arm = deltoid_moment_arm(0.0, D(t32), g.anterior_anchor, g.anterior_anchor_distance,
                                 g.deltoid_humeral_distance)
        halves.append(abs(arm / (0.5 * point_to_line_distance(g.anterior_anchor, n)) - 1))
    report(10, "virtual-work lever and half-distance identity", worst <= 0.05 and max(halves) <= 1e-12,
           f"worst lever mismatch {100 * worst:.2f}%, worst identity error {max(halves):.1e}")


COMMANDS = [
    ["dislocation"],
    *[["torque", "--motion", m] for m in TABLE],
    ["stability", "--kind", "selflock"],
    ["stability", "--kind", "coupling"],
    ["equilibrium"],
    ["rom"],
]


def test_11_determinism(tmp_path, report):
    differing = []
    for i, cmd in enumerate(COMMANDS):
        outs = [tmp_path / f"{i}-{k}" for k in (0, 1)]
        for out in outs:
            assert main(cmd + ["--out", str(out)]) == 0
        for f in sorted(p.name for p in outs[0].iterdir()):
            if (outs[0] / f).read_bytes() != (outs[1] / f).read_bytes():
                differing.append(f"{' '.join(cmd)}:{f}")
    cal = [tmp_path / f"cal{k}.json" for k in (0, 1)]
    for p in cal:
        assert main(["calibrate", "--anchor", "dislocation_peak=400", "--anchor", "flexion_max=35",
                     "--write", str(p), "--out", str(tmp_path)]) == 0
    if cal[0].read_bytes() != cal[1].read_bytes():
        differing.append("calibrate")
    report(11, "byte-identical reruns", not differing,
           f"{len(COMMANDS) + 1} commands compared" + (f"; differ: {differing}" if differing else ""))
