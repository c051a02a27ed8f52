import math

import numpy as np
import pytest

from ghzstab import (
    CertificationConfig,
    DirectionList,
    Ensemble,
    StateVector,
    canonical_angles,
    expectation,
    joint_outcome_probabilities,
    measure_round,
    run_certification,
    sequential_outcome_probabilities,
    solve_common_eigenspace,
)
from ghzstab.errors import DomainError
from ghzstab.sampling import uniform_directions


def rationals(*pairs):
    return DirectionList.from_rationals(list(pairs))


EPR_DIRECTIONS = rationals((1, 2), (1, 2))
EPR = StateVector.ghz(2)


def test_measure_round_eigenstate_always_plus_one(rng):
    for _ in range(50):
        outcomes, product = measure_round(EPR, EPR_DIRECTIONS, rng)
        assert product == 1
        assert set(outcomes.tolist()) <= {-1, 1}


def test_measure_round_zero_expectation_state(rng):
    # |00> under XX: product is +-1 with equal probability
    state = StateVector.basis_state(2, 0)
    products = [measure_round(state, EPR_DIRECTIONS, rng)[1] for _ in range(2000)]
    assert abs(np.mean(products)) <= 5 / math.sqrt(2000)


def test_measure_round_z_eigenstate(rng):
    # |00> measured along z on both parties: product +1 always
    d = rationals((0, 1), (0, 1))
    state = StateVector.basis_state(2, 0)
    for _ in range(50):
        assert measure_round(state, d, rng)[1] == 1


def test_sequential_matches_joint_probabilities(rng):
    # chain-rule collapse probabilities equal the direct Born rule
    for n in [1, 2, 3, 4]:
        d = uniform_directions(n, rng)
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        state = StateVector.from_amplitudes(amps).normalize()
        seq = sequential_outcome_probabilities(state, d)
        joint = joint_outcome_probabilities(state, d)
        assert np.max(np.abs(seq - joint)) <= 1e-12
        assert abs(joint.sum() - 1.0) <= 1e-12


def test_empirical_matches_analytic_expectation(rng):
    # fixed-seed battery: empirical mean within 5/sqrt(shots) of <A>
    shots = 4000
    for seed in [11, 12]:
        for n in [2, 3]:
            d = uniform_directions(n, np.random.default_rng(seed))
            amps = np.random.default_rng(seed + 1).normal(size=1 << n) + 0j
            state = StateVector.from_amplitudes(amps).normalize()
            cfg = CertificationConfig(shots=shots, a_fraction=0.99, seed=seed)
            report = run_certification(state, d, cfg)
            assert abs(report.mean_a - expectation(state, d)) <= 5 / math.sqrt(
                report.count_a
            )


def test_unique_state_passes_exactly():
    report = run_certification(
        EPR, EPR_DIRECTIONS, CertificationConfig(shots=10_000, seed=1)
    )
    assert report.mean_a == 1.0 and report.mean_b == 1.0
    assert report.stderr_a == 0.0 and report.stderr_b == 0.0
    assert report.passed


def test_all_zero_state_fails_with_known_mean():
    # canonical triple: <000|A|000> = prod cos(2pi/3) = -1/8
    d = canonical_angles(3)
    state = StateVector.basis_state(3, 0)
    report = run_certification(
        state, d, CertificationConfig(shots=10_000, seed=2)
    )
    assert report.mean_b == 1.0
    assert abs(report.mean_a - (-1 / 8)) <= 5 * report.stderr_a
    assert not report.passed


def test_ensemble_uniform_basis_traceless_mean():
    # equal-frequency computational basis states: mean_a tracks tr(A)/2^n = 0
    d = EPR_DIRECTIONS
    ens = Ensemble.uniform_basis(2, sampling="cycle")
    report = run_certification(ens, d, CertificationConfig(shots=8000, seed=3))
    assert abs(report.mean_a) <= 5 * report.stderr_a
    assert not report.passed


def test_ensemble_random_sampling():
    ens = Ensemble(
        states=(StateVector.basis_state(1, 0), StateVector.basis_state(1, 1)),
        weights=(0.5, 0.5),
    )
    d = rationals((0, 1))
    report = run_certification(ens, d, CertificationConfig(shots=4000, seed=4))
    # z-measurement of an even mixture of |0> and |1>: mean near 0
    assert abs(report.mean_a) <= 5 * report.stderr_a


def test_ensemble_validation():
    with pytest.raises(DomainError):
        Ensemble(states=(EPR,), weights=(0.5,))
    with pytest.raises(DomainError):
        Ensemble(states=(EPR,), weights=(1.0,), sampling="bogus")


def test_report_is_deterministic():
    cfg = CertificationConfig(shots=3000, seed=42)
    a = run_certification(EPR, EPR_DIRECTIONS, cfg)
    b = run_certification(EPR, EPR_DIRECTIONS, cfg)
    assert a == b


def test_local_marginals_unbiased_product_certain():
    # unique stabilized state: each party's outcome is a fair coin, yet the
    # product is +1 in every round for both settings
    d = EPR_DIRECTIONS
    state = solve_common_eigenspace(d).basis.vectors[0]
    rng = np.random.default_rng(9)
    singles = []
    for _ in range(3000):
        outcomes, product = measure_round(state, d, rng)
        assert product == 1
        singles.append(outcomes)
    singles = np.array(singles)
    for party in range(2):
        assert abs(np.mean(singles[:, party])) <= 5 / math.sqrt(3000)


def test_config_validation():
    with pytest.raises(DomainError):
        CertificationConfig(shots=0)
    with pytest.raises(DomainError):
        CertificationConfig(a_fraction=1.5)
    with pytest.raises(DomainError):
        CertificationConfig(pass_threshold=0.0)
