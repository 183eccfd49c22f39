import math

import numpy as np
import pytest

from glenostatics.coupling import (
    CouplingConfig,
    coupled_elbow_angle,
    coupling_stability,
    equilibrium_pose,
    potential_height,
)
from glenostatics.errors import NoInteriorMinimum, ZeroElbowRadius
from glenostatics.stability import Status

D = math.radians


def make(l1=0.30, l2=0.25, r1=0.025, r2=0.05, theta_d=20.0, theta_s=20.0):
    return CouplingConfig(r1, r2, l1, l2, D(theta_d), D(theta_s))


def test_elbow_angle():
    assert coupled_elbow_angle(0.2, 0.3, 0.04, 0.04) == pytest.approx(0.5, rel=1e-15)
    np.testing.assert_allclose(coupled_elbow_angle(D(20), D(40), 0.025, 0.05), D(30), rtol=1e-15)
    assert coupled_elbow_angle(0.0, 0.0, 0.025, 0.05) == 0.0
    with pytest.raises(ZeroElbowRadius):
        coupled_elbow_angle(0.1, 0.1, 0.02, 0.0)
    with pytest.raises(ZeroElbowRadius):
        make(r2=0.0)


def test_potential_height():
    assert potential_height(0.0, make(theta_d=0.0)) == 0.0
    cfg = make(r1=0.04, r2=0.04, theta_d=0.0)
    assert potential_height(0.7, cfg) == pytest.approx(0.30 * math.sin(0.7), rel=1e-15)
    np.testing.assert_allclose(potential_height(D(40), make()), 0.1494242384892292, rtol=1e-14)


def test_coupling_stability():
    rep = coupling_stability(0.0, 0.0, 0.0)
    assert rep.status is Status.STABLE and rep.margin == 180.0
    assert coupling_stability(D(165), D(20), D(50)).status is Status.UNSTABLE
    assert coupling_stability(D(140), D(20), D(60)).status is Status.MARGINAL


def test_reference_equilibrium(reference):
    res = equilibrium_pose(CouplingConfig.from_geometry(reference.geometry))
    assert not res.at_boundary and res.converged
    cfg = CouplingConfig.from_geometry(reference.geometry)
    assert res.theta_f == pytest.approx(coupled_elbow_angle(cfg.scapula_angle, res.theta_e, 0.025, 0.05), abs=1e-12)
    assert res.height == pytest.approx(potential_height(res.theta_e, cfg), abs=1e-12)


def test_monotone_objective_hits_boundary():
    cfg = make(r1=0.03, r2=0.03, theta_d=0.0, l2=1e-9)
    res = equilibrium_pose(cfg)
    assert res.at_boundary and res.theta_e == -math.pi / 2
    with pytest.raises(NoInteriorMinimum):
        equilibrium_pose(cfg, strict=True)


def test_reversed_bracket_gives_same_answer():
    cfg = make()
    a = equilibrium_pose(cfg, (-math.pi / 2, math.pi / 2))
    b = equilibrium_pose(cfg, (math.pi / 2, -math.pi / 2))
    assert a == b
