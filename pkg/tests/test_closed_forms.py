import math

import numpy as np
import pytest

from qsteer import harness, measures, states
from qsteer.errors import ParameterOutOfRange


def test_ad_sweep_small_grid():
    records = harness.run_family_sweep("ad", theta_steps=8, eta_steps=8)
    assert len(records) == 64
    for r in records:
        assert r.family == "ad"
        assert r.unitary_seed is None
        assert r.max_abs_discrepancy <= 1e-8
        # F on this family obeys F^2 = 2 C^2 + 2 purity - 1
        assert r.f_closed == pytest.approx(
            math.sqrt(2.0 * r.c_closed**2 + 2.0 * r.purity_closed - 1.0), abs=1e-12
        )


def test_pd_sweep_small_grid():
    records = harness.run_family_sweep("pd", theta_steps=8, eta_steps=8)
    assert len(records) == 64
    for r in records:
        assert r.family == "pd"
        assert r.s_closed == r.c_closed
        assert r.max_abs_discrepancy <= 1e-8
        assert r.f_closed == pytest.approx(
            math.sqrt(1.0 + 2.0 * r.c_closed**2), abs=1e-12
        )


def test_wu_sweep_matches_closed_forms():
    records = harness.run_family_sweep("wu", p_steps=30, seed=3)
    assert len(records) == 30
    for r in records:
        assert r.family == "wu"
        assert isinstance(r.unitary_seed, int)
        assert 0.0 <= r.eta_or_p <= 1.0
        assert 0.05 <= r.theta <= math.pi / 2.0 - 0.05
        assert r.max_abs_discrepancy <= 1e-8
        assert abs(r.purity_num - r.purity_closed) <= 1e-10
        # steerability is recoverable from (C, purity) alone
        s43 = measures.wu_steerability_from_c_purity(r.c_num, r.purity_num)
        assert abs(s43 - r.s_num) <= 1e-8


def test_wu_sweep_is_deterministic():
    a = harness.run_family_sweep("wu", p_steps=10, seed=12)
    b = harness.run_family_sweep("wu", p_steps=10, seed=12)
    assert a == b
    c = harness.run_family_sweep("wu", p_steps=10, seed=13)
    assert a != c


def test_sweep_argument_validation():
    with pytest.raises(ParameterOutOfRange):
        harness.run_family_sweep("xy")
    with pytest.raises(ParameterOutOfRange):
        harness.run_family_sweep("ad", theta_steps=1)
    with pytest.raises(ParameterOutOfRange):
        harness.run_family_sweep("wu", p_steps=1)


def test_boundary_concurrence_closed_form():
    # the criterion crosses zero exactly on the curve, and the curve meets
    # the realizability envelope at purity 1/2
    for p in (0.6, 0.75, 0.9, 1.0):
        c = harness._boundary_concurrence(p)
        pur = (1.0 + 3.0 * p * p) / 4.0
        assert measures.wu_steering_margin(c, pur) == pytest.approx(0.0, abs=1e-12)
    p0 = 1.0 / math.sqrt(3.0)
    meet = harness._boundary_concurrence(p0)
    assert meet == pytest.approx((math.sqrt(3.0) - 1.0) / 2.0, abs=1e-12)
    assert meet == pytest.approx((3.0 * p0 - 1.0) / 2.0, abs=1e-12)
    assert harness._boundary_concurrence(1.0) == pytest.approx(0.0, abs=1e-15)


def test_region_scan_known_cells():
    result = harness.run_region_scan(4, 5)
    table = {(round(r.purity, 6), round(r.concurrence, 6)): r.region for r in result.records}
    assert len(result.records) == 20
    assert table[(0.25, 0.0)] == "separable-boundary"
    assert table[(0.25, 0.5)] == "unrealizable"
    assert table[(1.0, 0.0)] == "separable-boundary"
    assert table[(1.0, 0.25)] == "steerable"
    assert table[(1.0, 1.0)] == "steerable"
    assert table[(0.5, 0.25)] == "entangled-unknown"
    assert table[(0.5, 0.5)] == "unrealizable"


def test_region_scan_companion_series():
    result = harness.run_region_scan(7, 4)
    assert len(result.werner_envelope) == 7
    # envelope starts at C = 0 (maximally mixed) and ends at C = 1 (pure Bell)
    assert result.werner_envelope[0] == (0.25, 0.0)
    assert result.werner_envelope[-1][0] == 1.0
    assert result.werner_envelope[-1][1] == pytest.approx(1.0, abs=1e-12)
    # the criterion boundary only exists where steerable states are realizable
    assert all(u >= 0.5 - 1e-12 for u, _ in result.criterion_boundary)
    for u, c in result.criterion_boundary:
        p = math.sqrt((4.0 * u - 1.0) / 3.0)
        assert c == pytest.approx(harness._boundary_concurrence(p), abs=1e-15)
    with pytest.raises(ParameterOutOfRange):
        harness.run_region_scan(1, 5)


def test_werner_family_walks_the_envelope():
    # werner_like states sit exactly on the envelope C = (3p - 1)/2
    phi = states.bell_like(np.pi / 4)
    for p in (0.4, 0.6, 0.9):
        rep = measures.report(states.werner_like(p, phi))
        assert rep.concurrence == pytest.approx(max(0.0, (3.0 * p - 1.0) / 2.0), abs=1e-12)
        assert rep.purity == pytest.approx((1.0 + 3.0 * p * p) / 4.0, abs=1e-12)
