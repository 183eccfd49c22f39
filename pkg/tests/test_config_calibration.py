import copy
import json
import math

import numpy as np
import pytest

from glenostatics import calibration, config
from glenostatics.errors import ConfigError, InvalidGeometry
from glenostatics.stability import max_dislocation_force
from glenostatics.torque import torque_surface

D30 = math.radians(30.0)


@pytest.fixture
def raw():
    return json.loads(config.reference_config_text())


def test_reference_text_round_trips(reference):
    assert config.dumps(reference) == config.reference_config_text()


def test_values_round_trip(reference):
    again = config.loads(config.dumps(reference))
    assert again.geometry == reference.geometry
    assert again.forces == reference.forces
    assert again.robot_rom == reference.robot_rom


def test_unknown_keys_rejected(raw):
    for section, key in (("geometry", "head_raduis"), ("forces", "pectoralis"), ("tolerances", "tol"), (None, "extra")):
        bad = copy.deepcopy(raw)
        (bad if section is None else bad[section])[key] = 1.0
        with pytest.raises(ConfigError, match=key):
            config.config_from_dict(bad)


def test_missing_and_malformed(raw):
    bad = copy.deepcopy(raw)
    del bad["geometry"]["head_radius"]
    with pytest.raises(ConfigError, match="head_radius"):
        config.config_from_dict(bad)
    bad = copy.deepcopy(raw)
    bad["geometry"]["head_radius"] = True
    with pytest.raises(ConfigError):
        config.config_from_dict(bad)
    bad = copy.deepcopy(raw)
    bad["rom"]["robot"]["rotation_deg"] = [40.0, -90.0]
    with pytest.raises(ConfigError):
        config.config_from_dict(bad)
    with pytest.raises(ConfigError):
        config.loads("{not json")


def test_invalid_geometry_lists_violations(raw):
    bad = copy.deepcopy(raw)
    bad["geometry"]["head_radius"] = 0.0
    bad["geometry"]["rotator_insertion_projection"] = 0.031
    with pytest.raises(InvalidGeometry) as info:
        config.config_from_dict(bad)
    assert {v.kind for v in info.value.violations} == {"NonPositiveLength", "InsertionOutsideHead"}


def test_grid_specs():
    np.testing.assert_array_equal(config.grid_from_spec({"start": 0, "stop": 2, "points": 3}), [0.0, 1.0, 2.0])
    np.testing.assert_array_equal(config.grid_from_spec({"values": [5, 1]}), [5.0, 1.0])
    with pytest.raises(ConfigError):
        config.grid_from_spec({"start": 0, "stop": 2, "points": 1})
    with pytest.raises(ConfigError):
        config.grid_from_spec({"start": 0, "stop": 2})


def test_bad_sweep_rejected(raw):
    bad = copy.deepcopy(raw)
    bad["sweeps"]["torque"]["flexion"]["axis3_deg"] = {"values": [0]}
    with pytest.raises(ConfigError, match="axis3_deg"):
        config.config_from_dict(bad)


# --- calibration --------------------------------------------------------------------

def test_stiffness_calibration(geometry):
    g = calibration.calibrate_stiffness(geometry.replace(tendon_stiffness=1.0), 400.0, D30)
    assert max_dislocation_force(D30, g)[0] == pytest.approx(400.0, abs=1e-6)
    again = calibration.calibrate_stiffness(g, 400.0, D30)
    np.testing.assert_allclose(again.tendon_stiffness, g.tendon_stiffness, rtol=1e-9)


def test_reference_stiffness_is_a_fixed_point(geometry):
    again = calibration.calibrate_stiffness(geometry, 400.0, D30)
    np.testing.assert_allclose(again.tendon_stiffness, geometry.tendon_stiffness, rtol=1e-9)


def test_closed_form_levers(reference):
    g, f = reference.geometry, reference.forces
    assert calibration.calibrate_abduction(g, f, 54.0).abductor_lever == pytest.approx(0.030, rel=1e-15)
    assert calibration.calibrate_adduction(g, f, 35.0).triceps_anchor_distance == pytest.approx(0.050, rel=1e-15)
    scaled = calibration.calibrate_rotation(g, f, 36.0)
    assert scaled.rotation_head_radius == pytest.approx(0.060, rel=1e-15)
    assert scaled.rotator_motor_distance == pytest.approx(2 * g.rotator_motor_distance, rel=1e-15)


def test_deltoid_calibration(reference):
    g, f = reference.geometry, reference.forces
    g1, g2 = np.radians(np.arange(-40, 66.0)), np.radians(np.arange(-32, 105.0))
    out = calibration.calibrate_deltoid(g, f, 30.0, "flexion", g1, g2)
    peak = torque_surface("flexion", g1, g2, f, out).max()[0]
    assert peak == pytest.approx(30.0, rel=1e-9)
    # the reference is already calibrated: a rerun leaves it alone
    assert calibration.calibrate_deltoid(g, f, 35.0, "flexion", g1, g2) is g
    with pytest.raises(ValueError):
        calibration.calibrate_deltoid(g, f, 500.0, "extension", g1, g2)
