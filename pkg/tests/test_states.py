import json

import numpy as np
import pytest

from qsteer import measures, states
from qsteer.errors import (
    ChannelIncomplete,
    IndexOutOfRange,
    NotHermitian,
    NotNormalized,
    NotPSD,
    ParameterOutOfRange,
    TraceNotOne,
    ValidationError,
)


def test_bell_like_amplitudes():
    psi = states.bell_like(np.pi / 6)
    assert psi.amplitudes[0] == pytest.approx(np.cos(np.pi / 6), abs=1e-15)
    assert psi.amplitudes[3] == pytest.approx(np.sin(np.pi / 6), abs=1e-15)
    assert psi.amplitudes[1] == 0.0 and psi.amplitudes[2] == 0.0
    for bad in (0.0, np.pi / 2, -0.3, 2.0):
        with pytest.raises(ParameterOutOfRange):
            states.bell_like(bad)


def test_pure_state_validation():
    with pytest.raises(NotNormalized):
        states.PureState(np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValidationError):
        states.PureState(np.array([1.0, 0.0]))
    with pytest.raises(ValidationError):
        states.PureState(np.array([np.nan, 0.0, 0.0, 0.0]))
    psi = states.PureState(np.array([1.0, 0.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_density_matrix_validation():
    with pytest.raises(NotHermitian):
        states.DensityMatrix(np.diag([1.0, 0, 0, 0]) + 1e-3 * np.eye(4, k=1))
    with pytest.raises(TraceNotOne):
        states.DensityMatrix(np.eye(4) / 3.0)
    with pytest.raises(NotPSD):
        states.DensityMatrix(np.diag([1.5, -0.5, 0.0, 0.0]))
    with pytest.raises(ValidationError):
        states.DensityMatrix(np.eye(2) / 2.0)
    rho = states.DensityMatrix(np.eye(4) / 4.0)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_werner_like_matrix():
    phi = states.bell_like(np.pi / 4)
    rho = states.werner_like(0.8, phi)
    expect = 0.8 * np.outer(phi.amplitudes, phi.amplitudes.conj()) + 0.05 * np.eye(4)
    assert np.abs(rho.matrix - expect).max() < 1e-15
    with pytest.raises(ParameterOutOfRange):
        states.werner_like(1.2, phi)


def test_channel_constructors_are_complete():
    for make in (states.make_ad_channel, states.make_pd_channel):
        for eta in (0.0, 0.3, 1.0):
            ch = make(eta)
            total = sum(k.conj().T @ k for k in ch.operators)
            assert np.abs(total - np.eye(2)).max() < 1e-15
        with pytest.raises(ParameterOutOfRange):
            make(-0.1)
        with pytest.raises(ParameterOutOfRange):
            make(1.1)


def test_kraus_channel_validation():
    with pytest.raises(ChannelIncomplete):
        states.KrausChannel((np.eye(2) * 0.9,), target="A")
    with pytest.raises(ValidationError):
        states.KrausChannel((np.eye(2),), target="X")
    with pytest.raises(ValidationError):
        states.KrausChannel((np.eye(3),), target="A")


def test_amplitude_damping_moves_population():
    # |10><10| decays to |00><00| at rate eta on qubit A
    rho = states.DensityMatrix(np.diag([0.0, 0.0, 1.0, 0.0]))
    out = states.apply_channel(rho, states.make_ad_channel(0.3, "A"))
    assert out.matrix[2, 2] == pytest.approx(0.7, abs=1e-15)
    assert out.matrix[0, 0] == pytest.approx(0.3, abs=1e-15)


def test_phase_damping_kills_coherence_only():
    rho = states.density_from_pure(states.bell_like(np.pi / 4))
    out = states.apply_channel(rho, states.make_pd_channel(0.5, "A"))
    assert out.matrix[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert out.matrix[3, 3] == pytest.approx(0.5, abs=1e-15)
    assert abs(out.matrix[0, 3]) == pytest.approx(0.5 * np.sqrt(0.5), abs=1e-15)


@pytest.mark.parametrize("make", [states.make_ad_channel, states.make_pd_channel])
def test_damping_composes_as_semigroup(make):
    cfg = states.SamplerConfig("ginibre", "uniform", seed=21, count=1)
    rho = states.random_state(cfg, 0)
    eta1, eta2 = 0.3, 0.45
    twice = states.apply_channel(states.apply_channel(rho, make(eta1)), make(eta2))
    once = states.apply_channel(rho, make(1.0 - (1.0 - eta1) * (1.0 - eta2)))
    assert np.abs(twice.matrix - once.matrix).max() < 1e-14


@pytest.mark.parametrize("make", [states.make_ad_channel, states.make_pd_channel])
def test_damping_target_symmetry_on_symmetric_state(make):
    rho = states.density_from_pure(states.bell_like(np.pi / 5))
    out_a = states.apply_channel(rho, make(0.4, "A"))
    out_b = states.apply_channel(rho, make(0.4, "B"))
    ra = measures.report(out_a)
    rb = measures.report(out_b)
    for name in ("concurrence", "f_value", "steerability", "purity"):
        assert getattr(ra, name) == pytest.approx(getattr(rb, name), abs=1e-12)


def test_sampler_config_validation():
    with pytest.raises(ParameterOutOfRange):
        states.SamplerConfig(measure="bures")
    with pytest.raises(ParameterOutOfRange):
        states.SamplerConfig(ranks=5)
    with pytest.raises(ParameterOutOfRange):
        states.SamplerConfig(seed=-1)
    with pytest.raises(ParameterOutOfRange):
        states.SamplerConfig(count=-2)


def test_draws_are_deterministic_and_chunk_independent():
    cfg = states.SamplerConfig("ginibre", "uniform", seed=123, count=10)
    a, ka = states.draw_matrices(cfg, 0, 10)
    b, kb = states.draw_matrices(cfg, 0, 10)
    assert np.array_equal(a, b) and np.array_equal(ka, kb)
    head, kh = states.draw_matrices(cfg, 0, 4)
    tail, kt = states.draw_matrices(cfg, 4, 10)
    assert np.array_equal(a, np.concatenate([head, tail]))
    assert np.array_equal(ka, np.concatenate([kh, kt]))
    assert np.array_equal(states.random_state(cfg, 5).matrix, a[5])


def test_random_state_index_bounds():
    cfg = states.SamplerConfig("ginibre", "uniform", seed=1, count=3)
    with pytest.raises(IndexOutOfRange):
        states.random_state(cfg, 3)
    with pytest.raises(IndexOutOfRange):
        states.random_state(cfg, -1)


def test_seeds_give_distinct_streams():
    a, _ = states.draw_matrices(states.SamplerConfig("ginibre", 4, seed=0, count=1), 0, 1)
    b, _ = states.draw_matrices(states.SamplerConfig("ginibre", 4, seed=1, count=1), 0, 1)
    assert np.abs(a - b).max() > 1e-3


def test_rank_policy():
    cfg = states.SamplerConfig("ginibre", 2, seed=9, count=50)
    rhos, ranks = states.draw_matrices(cfg, 0, 50)
    assert np.all(ranks == 2)
    for rho in rhos:
        w = np.linalg.eigvalsh(rho)
        assert (w > 1e-12).sum() == 2


def test_uniform_rank_frequencies():
    # binomial 3 sigma around n/4 for each rank
    cfg = states.SamplerConfig("ginibre", "uniform", seed=31, count=4000)
    _, ranks = states.draw_matrices(cfg, 0, 4000)
    sigma = np.sqrt(4000 * 0.25 * 0.75)
    for k in (1, 2, 3, 4):
        assert abs((ranks == k).sum() - 1000) < 3 * sigma


def test_haar_pure_draws_are_pure():
    cfg = states.SamplerConfig("haar-pure", "uniform", seed=2, count=20)
    rhos, ranks = states.draw_matrices(cfg, 0, 20)
    assert np.all(ranks == 1)
    for rho in rhos:
        assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12
        assert abs(np.trace(rho).real - 1.0) < 1e-12


def test_random_unitary_is_haar_like():
    u = states.random_unitary(3, 0)
    assert np.abs(u @ u.conj().T - np.eye(4)).max() < 1e-12
    assert np.array_equal(u, states.random_unitary(3, 0))
    assert np.abs(u - states.random_unitary(3, 1)).max() > 1e-3
    # E|U_00|^2 = 1/4 for Haar; 3000 draws put the 3 sigma band near 0.01
    acc = 0.0
    for i in range(3000):
        acc += abs(states.random_unitary(777, i)[0, 0]) ** 2
    assert abs(acc / 3000 - 0.25) < 0.011


def test_relative_phase_does_not_change_measures():
    theta = np.pi / 5
    plain = states.bell_like(theta)
    twisted = states.PureState(plain.amplitudes * np.exp(1j * np.array([0.0, 0, 0, 0.9])))
    for p in (1.0, 0.6):
        ra = measures.report(states.werner_like(p, plain))
        rb = measures.report(states.werner_like(p, twisted))
        for name in ("concurrence", "f_value", "steerability", "purity"):
            assert getattr(ra, name) == pytest.approx(getattr(rb, name), abs=1e-12)


def test_state_json_round_trip():
    cfg = states.SamplerConfig("ginibre", "uniform", seed=8, count=1)
    rho = states.random_state(cfg, 0)
    text = json.dumps(states.state_to_json(rho))
    back = states.state_from_json(json.loads(text))
    assert np.array_equal(back.matrix, rho.matrix)


def test_state_from_json_names_the_failed_invariant():
    good = states.state_to_json(states.DensityMatrix(np.eye(4) / 4.0))

    with pytest.raises(ValidationError, match="dim"):
        states.state_from_json({**good, "dim": 2})
    with pytest.raises(ValidationError, match="rows"):
        states.state_from_json({**good, "matrix": good["matrix"][:3]})
    broken = json.loads(json.dumps(good))
    broken["matrix"][1][2] = [0.0]
    with pytest.raises(ValidationError, match=r"\(1, 2\)"):
        states.state_from_json(broken)
    with pytest.raises(ValidationError):
        states.state_from_json([1, 2, 3])

    lopsided = json.loads(json.dumps(good))
    lopsided["matrix"][0][0] = [1.25, 0.0]
    lopsided["matrix"][1][1] = [-0.75, 0.0]
    with pytest.raises(NotPSD):
        states.state_from_json(lopsided)

    heavy = json.loads(json.dumps(good))
    heavy["matrix"][0][0] = [0.5, 0.0]
    with pytest.raises(TraceNotOne):
        states.state_from_json(heavy)
