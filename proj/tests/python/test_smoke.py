import math

import numpy as np
import pytest

import msched


def test_grover_matches_closed_form():
    n, marked = 5, [3, 17]
    k = msched.optimal_iterations(n, len(marked))
    amps = msched.grover_search(n, marked, k)
    p = float(np.sum(np.abs(amps[marked]) ** 2))
    theta = math.asin(math.sqrt(len(marked) / 2**n))
    assert p == pytest.approx(math.sin((2 * k + 1) * theta) ** 2, abs=1e-12)
    assert msched.success_probability(n, len(marked), k) == pytest.approx(p, abs=1e-12)


def test_circuit_identities():
    u = msched.uniform_state(4)
    assert np.allclose(u, 0.25)
    assert np.allclose(msched.apply_diffusion(msched.apply_diffusion(u)), u)
    assert np.allclose(msched.apply_phase_oracle(u, [2, 5])[[2, 5]], -0.25)
    basis = np.zeros(32, dtype=complex)
    basis[11] = 1.0
    assert msched.pattern_oracle("01011", basis)[11] == -1.0


def test_scheduling_vector():
    s = msched.SchedulingVector([0, 1, 0, 1, 1])
    assert s.index() == 11
    assert len(s) == 5 and s.count() == 3
    assert msched.SchedulingVector.from_index(11, 5) == s
    assert repr(s) == "SchedulingVector('01011')"


def test_channel_and_baselines():
    cfg = msched.make_config(16, 4, 20.0, 3)
    ch = msched.generate_channel(cfg, 0)
    assert ch.matrix.shape == (16, 4)
    beams = msched.select_beams(ch)
    assert len(set(beams.beam_index)) == 4
    pf = msched.PFState([1.0] * 4)
    best, value = msched.exhaustive_best(ch, beams, pf)
    greedy = msched.greedy_pf(ch, beams, pf)
    g = msched.pf_objective(msched.instantaneous_rates(ch, beams, greedy), pf, greedy)
    assert value >= g - 1e-12
    assert msched.random_policy(4, 7).count() >= 1


def test_config_errors():
    with pytest.raises(msched.ConfigError):
        msched.parse_config("users=20 antennas=8")
    with pytest.raises(ValueError):
        msched.parse_config("bogus=1")


def test_small_convergence_and_sweep():
    spec = msched.parse_config("epochs=12 validation_slots=4 seed=5")
    rows = msched.run_convergence(spec)
    assert [r["epoch"] for r in rows] == list(range(1, 13))
    assert rows == msched.run_convergence(spec)

    sweep = msched.parse_config("axis=snr snr_db=0,20 users=3 antennas=8 epochs=5 realizations=2")
    out = msched.run_sweep(sweep, workers=2)
    assert len(out) == 8
    assert msched.results_csv(sweep).splitlines()[0] == "method,T,A,snr_db,epoch,mean_sum_rate,std_sum_rate,pf_value,seed"


def test_train():
    tc = msched.TrainConfig()
    tc.epochs = 6
    tc.validation_slots = 4
    tc.channel = msched.make_config(8, 3, 10.0, 2)
    agent, log = msched.train(tc)
    assert len(log) == 6
    assert agent.amplify_factor >= 1
