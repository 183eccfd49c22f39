"""Command-line front end.

    glenostatics <command> --config <path> [--out <dir>] [--grid N] [--tol X]
                 [--mode verbatim|corrected]

Every command writes plot-ready CSV and a ``summary.json`` into the output
directory. Exit codes: 0 success, 2 usage or configuration error, 3 numerical
domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import calibration, config as config_io
from .coupling import CouplingConfig, coupling_stability, equilibrium_pose
from .errors import ConfigError, DomainError, GlenoError, InvalidGeometry, UnknownMotion
from .model import MOTION_GROUPS, degrees_to_internal, internal_to_degrees, validate_geometry
from .stability import dislocation_force, max_dislocation_force, rom_coverage, rom_from_contact, self_lock_status
from .torque import ARM_MODES, MOTIONS, VERBATIM, torque_surface

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3
SIG_DIGITS = 10

ANCHORS = ("dislocation_peak", "flexion_max", "extension_max", "abduction_max", "adduction_max", "rotation_max")


class UsageError(GlenoError):
    pass


def fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _write_csv(path: Path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def _write_json(path: Path, payload):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="")


class Run:
    """Resolved configuration plus command-line overrides for one invocation."""

    def __init__(self, args):
        self.args = args
        if args.config is None:
            self.config_text = config_io.reference_config_text()
            self.config_path = None
        else:
            try:
                self.config_text = Path(args.config).read_text(encoding="utf-8")
            except OSError as e:
                raise ConfigError(f"cannot read config: {e}") from None
            self.config_path = Path(args.config)
        self.cfg = config_io.loads(self.config_text)
        self.out = Path(args.out or self.cfg.outputs.directory)
        self.formats = set(self.cfg.outputs.formats)
        tol = self.cfg.tolerances
        self.tol = args.tol if args.tol is not None else tol.solver_tol
        if not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol!r}")
        if args.grid is not None and args.grid < 1:
            raise UsageError(f"--grid must be at least 1, got {args.grid!r}")
        self.mode = args.mode

    def sweep(self, name):
        return self.cfg.sweeps.get(name, {})

    def grid(self, spec, where):
        """Degrees grid; ``--grid N`` overrides the point count of start/stop specs."""
        if self.args.grid is not None and "values" not in spec:
            spec = dict(spec, points=self.args.grid)
            return config_io.grid_from_spec(spec, where, min_points=1)
        return config_io.grid_from_spec(spec, where)

    def emit(self, csv_files, summary):
        self.out.mkdir(parents=True, exist_ok=True)
        written = []
        if "csv" in self.formats:
            for name, (header, rows) in csv_files.items():
                _write_csv(self.out / name, header, rows)
                written.append(name)
        if "json" in self.formats:
            _write_json(self.out / "summary.json", summary)
            written.append("summary.json")
        return written


# --- commands -------------------------------------------------------------------

def cmd_dislocation(run: Run) -> dict:
    sweep = run.sweep("dislocation")
    theta_h_deg = run.args.theta_h if run.args.theta_h is not None else sweep.get("theta_h_deg", [])
    if not theta_h_deg:
        raise UsageError("dislocation needs at least one theta_h value (--theta-h or sweeps.dislocation.theta_h_deg)")
    n_c = sweep.get("theta_c_points", 31)
    if run.args.grid is not None:
        n_c = run.args.grid
    g = run.cfg.geometry
    n = run.cfg.tolerances.grid_points
    rows, results = [], []
    for th_deg in theta_h_deg:
        th = degrees_to_internal(th_deg)
        fe_max, tc_star = max_dislocation_force(th, g, n=n, tol=run.tol)
        tcs = np.linspace(0.0, th, n_c) if n_c > 1 else np.array([0.0])
        fes = dislocation_force(tcs, th, g)
        rows.extend((float(th_deg), internal_to_degrees(tc), float(fe)) for tc, fe in zip(tcs, fes))
        results.append({"theta_h_deg": float(th_deg), "fe_max_N": fe_max,
                        "theta_c_star_deg": internal_to_degrees(tc_star)})
    peaks = [r["fe_max_N"] for r in results]
    summary = {
        "command": "dislocation",
        "results": results,
        "fe_max_strictly_increasing": all(b > a for a, b in zip(peaks, peaks[1:])),
    }
    run.emit({"dislocation.csv": (["theta_h_deg", "theta_c_deg", "f_e_N"], rows)}, summary)
    for r in results:
        print(f"theta_h = {r['theta_h_deg']:g} deg: peak {r['fe_max_N']:.6g} N at theta_c = {r['theta_c_star_deg']:.6g} deg")
    return summary


def default_torque_grids(motion: str, robot_rom) -> dict:
    def span(lo, hi):
        lo, hi = internal_to_degrees(lo), internal_to_degrees(hi)
        return {"start": lo, "stop": hi, "points": int(round(hi - lo)) + 1}

    flex, abd, rot = robot_rom.flexion_extension, robot_rom.abduction_adduction, robot_rom.rotation
    if motion in ("flexion", "extension"):
        return {"axis1_deg": span(*flex), "axis2_deg": span(*abd)}
    if motion == "abduction":
        return {"axis1_deg": {"start": -60.0, "stop": 60.0, "points": 121}}
    if motion == "adduction":
        return {"axis1_deg": span(*abd)}
    if motion == "rotation":
        lo = max(abd[0], 0.0)
        hi = min(abd[1], math.pi / 2)
        return {"axis1_deg": span(lo, hi), "axis2_deg": span(*rot)}
    raise UnknownMotion(f"unknown motion {motion!r}; expected one of {MOTIONS}")


def torque_grids(run: Run, motion: str):
    specs = run.sweep("torque").get(motion) or default_torque_grids(motion, run.cfg.robot_rom)
    g1 = run.grid(specs["axis1_deg"], f"sweeps.torque.{motion}.axis1_deg")
    g2 = run.grid(specs["axis2_deg"], f"sweeps.torque.{motion}.axis2_deg") if "axis2_deg" in specs else None
    return g1, g2


def cmd_torque(run: Run) -> dict:
    motion = run.args.motion
    if motion not in MOTIONS:
        raise UnknownMotion(f"unknown motion {motion!r}; expected one of {', '.join(MOTIONS)}")
    g1, g2 = torque_grids(run, motion)
    rad1 = np.array([degrees_to_internal(v) for v in g1])
    rad2 = None if g2 is None else np.array([degrees_to_internal(v) for v in g2])
    surf = torque_surface(motion, rad1, rad2, run.cfg.forces, run.cfg.geometry, run.mode)

    if g2 is not None:
        header = ["axis1_deg", "axis2_deg", "torque_Nm"]
        rows = [(float(a), float(b), float(surf.values[i, j]))
                for i, a in enumerate(g1) for j, b in enumerate(g2)]
    elif motion == "abduction":
        header = ["axis1_deg", "torque_Nm", "tau_b1_Nm", "tau_b2_Nm"]
        rows = [(float(a), float(surf.values[i]), float(surf.components["tau_b1"][i]),
                 float(surf.components["tau_b2"][i])) for i, a in enumerate(g1)]
    else:
        header = ["axis1_deg", "torque_Nm"]
        rows = [(float(a), float(surf.values[i])) for i, a in enumerate(g1)]

    peak, where = surf.max()
    summary = {
        "command": "torque",
        "motion": motion,
        "mode": run.mode,
        "axis_names": list(surf.axis_names),
        "muscle": surf.muscle,
        "force_used_N": surf.force_used,
        "max_torque_Nm": peak,
        "argmax_deg": [internal_to_degrees(a) for a in where],
        "shape": list(surf.values.shape),
    }
    run.emit({f"torque_{motion}.csv": (header, rows)}, summary)
    print(f"{motion}: max {peak:.6g} N m at {', '.join(f'{internal_to_degrees(a):.6g}' for a in where)} deg")
    return summary


def cmd_stability(run: Run) -> dict:
    tol = run.cfg.tolerances.marginal_deg
    records = []
    if run.args.kind == "selflock":
        sweep = run.sweep("selflock")
        theta_d = run.args.theta_d if run.args.theta_d is not None else sweep.get("theta_d_deg", [])
        socket = sweep.get("socket_half_deg", 0.0)
        for d in theta_d:
            rep = self_lock_status(degrees_to_internal(d), degrees_to_internal(socket), tol)
            records.append({"theta_d_deg": float(d), "socket_half_deg": float(socket), **rep.as_dict()})
    else:
        if run.args.case:
            cases = [{"label": f"case {i}", "theta_d_deg": d, "theta_s_deg": s, "theta_e_deg": e}
                     for i, (d, s, e) in enumerate(run.args.case)]
        else:
            cases = run.sweep("coupling").get("cases", [])
        for case in cases:
            d, s, e = (float(case[k]) for k in ("theta_d_deg", "theta_s_deg", "theta_e_deg"))
            rep = coupling_stability(*(degrees_to_internal(v) for v in (d, s, e)), tol)
            records.append({"label": case.get("label", ""), "theta_d_deg": d, "theta_s_deg": s,
                            "theta_e_deg": e, "sum_deg": d - s + e, **rep.as_dict()})
    if not records:
        raise UsageError(f"stability {run.args.kind}: nothing to evaluate")
    summary = {"command": "stability", "kind": run.args.kind, "records": records}
    header = list(records[0])
    rows = [[r[k] for k in header] for r in records]
    run.emit({f"stability_{run.args.kind}.csv": (header, rows)}, summary)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return summary


def cmd_equilibrium(run: Run) -> dict:
    cc = CouplingConfig.from_geometry(run.cfg.geometry)
    lo, hi = run.sweep("equilibrium").get("bracket_deg", [-90.0, 90.0])
    n = run.cfg.tolerances.grid_points if run.args.grid is None else max(run.args.grid, 3)
    res = equilibrium_pose(cc, (degrees_to_internal(lo), degrees_to_internal(hi)), tol=run.tol, n=n,
                           tol_deg=run.cfg.tolerances.marginal_deg)
    summary = {
        "command": "equilibrium",
        "theta_e_deg": internal_to_degrees(res.theta_e),
        "theta_f_deg": internal_to_degrees(res.theta_f),
        "height_m": res.height,
        "at_boundary": res.at_boundary,
        "converged": res.converged,
        "bracket_deg": [float(lo), float(hi)],
        "report": res.stability.as_dict(),
    }
    run.emit({"equilibrium.csv": (["theta_e_deg", "theta_f_deg", "height_m", "margin_deg", "status"],
                                  [(summary["theta_e_deg"], summary["theta_f_deg"], res.height,
                                    res.stability.margin, res.stability.status.value)])}, summary)
    print(f"theta_e = {summary['theta_e_deg']:.6g} deg, theta_f = {summary['theta_f_deg']:.6g} deg, "
          f"H = {res.height:.6g} m, {res.stability.status.value}"
          + (" (bracket boundary)" if res.at_boundary else ""))
    return summary


def cmd_rom(run: Run) -> dict:
    robot, human = run.cfg.robot_rom, run.cfg.human_rom
    cov = rom_coverage(robot, human)
    rows, table = [], []
    for m in MOTION_GROUPS:
        r = [internal_to_degrees(v) for v in getattr(robot, m)]
        h = [internal_to_degrees(v) for v in getattr(human, m)]
        rows.append((m, r[0], r[1], r[1] - r[0], h[0], h[1], h[1] - h[0], cov[m]))
        table.append({"motion": m, "robot_deg": r, "human_deg": h, "coverage_pct": cov[m]})

    sweep = run.sweep("rom_contact")
    fr = sweep.get("theta_fr_deg", 180.0)
    fa = sweep.get("theta_fa_deg", 180.0)
    theta0 = run.grid(sweep.get("theta0_deg", {"start": 0.0, "stop": 40.0, "points": 9}), "sweeps.rom_contact.theta0_deg")
    contact_rows = []
    for t0 in theta0:
        r33, r32 = rom_from_contact(*(degrees_to_internal(v) for v in (fr, t0, fa, t0)))
        contact_rows.append((float(t0), internal_to_degrees(r33), internal_to_degrees(r32)))

    summary = {"command": "rom", "coverage": table,
               "contact": {"theta_fr_deg": float(fr), "theta_fa_deg": float(fa),
                           "rows": [list(r) for r in contact_rows]}}
    run.emit({
        "rom.csv": (["motion", "robot_min_deg", "robot_max_deg", "robot_span_deg",
                     "human_min_deg", "human_max_deg", "human_span_deg", "coverage_pct"], rows),
        "rom_contact.csv": (["theta0_deg", "rotation_range_deg", "abduction_range_deg"], contact_rows),
    }, summary)
    print(f"{'motion':<22}{'robot span':>12}{'human span':>12}{'coverage':>10}")
    for row in rows:
        print(f"{row[0]:<22}{row[3]:>11.6g}°{row[6]:>11.6g}°{row[7]:>9.2f}%")
    return summary


def _parse_anchor(text):
    name, sep, value = text.partition("=")
    if not sep or name not in ANCHORS:
        raise UsageError(f"anchor must be NAME=VALUE with NAME in {', '.join(ANCHORS)}; got {text!r}")
    try:
        v = float(value)
    except ValueError:
        raise UsageError(f"anchor value is not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise UsageError(f"anchor value must be positive: {text!r}")
    return name, v


def cmd_calibrate(run: Run) -> dict:
    anchors = [_parse_anchor(a) for a in run.args.anchor or []]
    target = Path(run.args.write) if run.args.write else run.out / "config.json"
    target.parent.mkdir(parents=True, exist_ok=True)
    if not anchors:
        target.write_text(run.config_text, encoding="utf-8", newline="")
        print(f"no anchors; copied config to {target}")
        return {"command": "calibrate", "anchors": {}, "written": str(target)}

    cfg = run.cfg
    g, forces = cfg.geometry, cfg.forces
    notes = {}
    for name, value in anchors:
        if name == "dislocation_peak":
            th = run.args.anchor_theta_h
            g = calibration.calibrate_stiffness(g, value, degrees_to_internal(th))
            notes["geometry.tendon_stiffness"] = (
                f"derived: scaled so the peak dislocation force at theta_h = {th:g} deg is {value:g} N")
        elif name in ("flexion_max", "extension_max"):
            motion = name.split("_")[0]
            g1, g2 = torque_grids(run, motion)
            g = calibration.calibrate_deltoid(
                g, forces, value, motion,
                [degrees_to_internal(v) for v in g1], [degrees_to_internal(v) for v in g2], run.mode)
            side = "anterior" if motion == "flexion" else "posterior"
            notes[f"geometry.{side}_anchor"] = (
                f"derived: direction assumed, distance scaled so the {motion} surface maximum "
                f"is {value:g} N m ({run.mode} lever)")
        elif name == "abduction_max":
            g = calibration.calibrate_abduction(g, forces, value)
            notes["geometry.abductor_lever"] = f"derived: {value:g} N m / summed abductor tension"
        elif name == "adduction_max":
            g = calibration.calibrate_adduction(g, forces, value)
            notes["geometry.triceps_anchor_distance"] = f"derived: {value:g} N m / triceps tension"
        elif name == "rotation_max":
            g = calibration.calibrate_rotation(g, forces, value)
            notes["geometry.rotation_head_radius"] = (
                f"derived: {value:g} N m / rotator tension; motor distance and insertion scaled with it")
    validate_geometry(g, cfg.robot_rom)
    cfg.geometry = g
    cfg.provenance.update(notes)
    target.write_text(config_io.dumps(cfg), encoding="utf-8", newline="")
    print(f"wrote calibrated config to {target}")
    return {"command": "calibrate", "anchors": dict(anchors), "written": str(target)}


COMMANDS = {
    "dislocation": cmd_dislocation,
    "torque": cmd_torque,
    "stability": cmd_stability,
    "equilibrium": cmd_equilibrium,
    "rom": cmd_rom,
    "calibrate": cmd_calibrate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="run configuration (JSON); defaults to the bundled reference")
    common.add_argument("--out", help="output directory (overrides outputs.directory)")
    common.add_argument("--grid", type=int, help="points per swept axis")
    common.add_argument("--tol", type=float, help="solver tolerance (rad or N)")
    common.add_argument("--mode", choices=ARM_MODES, default=VERBATIM,
                        help="deltoid lever: verbatim (half distance) or corrected")

    parser = argparse.ArgumentParser(prog="glenostatics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dislocation", parents=[common], help="dislocation force curves and peaks")
    p.add_argument("--theta-h", type=float, nargs="*", help="contact half-arcs to sweep, degrees")

    p = sub.add_parser("torque", parents=[common], help="torque surface of one motion")
    p.add_argument("--motion", required=True, help=f"one of {', '.join(MOTIONS)}")

    p = sub.add_parser("stability", parents=[common], help="self-lock or coupling classification")
    p.add_argument("--kind", choices=("selflock", "coupling"), required=True)
    p.add_argument("--theta-d", type=float, nargs="*", help="scapula angles for selflock, degrees")
    p.add_argument("--case", type=float, nargs=3, action="append", metavar=("THETA_D", "THETA_S", "THETA_E"),
                   help="coupling case in degrees (repeatable)")

    sub.add_parser("equilibrium", parents=[common], help="lowest-energy humerus angle")
    sub.add_parser("rom", parents=[common], help="range-of-motion coverage tables")

    p = sub.add_parser("calibrate", parents=[common], help="back-solve stiffness and levers from targets")
    p.add_argument("--anchor", action="append", help=f"NAME=VALUE, NAME in {', '.join(ANCHORS)}")
    p.add_argument("--anchor-theta-h", type=float, default=30.0, help="theta_h for dislocation_peak, degrees")
    p.add_argument("--write", help="path of the calibrated config (default <out>/config.json)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = Run(args)
        COMMANDS[args.command](run)
    except (ConfigError, InvalidGeometry, UnknownMotion, UsageError) as e:
        if isinstance(e, InvalidGeometry):
            print("error: invalid geometry", file=sys.stderr)
            for v in e.violations:
                print(f"  {v}", file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        if isinstance(e, UsageError):
            parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"numerical domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
