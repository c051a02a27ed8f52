import math

import numpy as np
import pytest

from ghzstab import (
    Angle,
    BitString,
    DirectionList,
    GHZSpec,
    StabilizerCase,
    StateVector,
    bitstring_phase,
    brute_force_eigenspace,
    canonical_angles,
    classify,
    degenerate_ghz_candidates,
    fidelity,
    ghz_from_pattern,
    local_phase_basis,
    product_observable,
    sigma_z_product,
    solve_common_eigenspace,
    stabilizing_pair_for,
    subspace_distance,
)
from ghzstab.bitstrings import parity_classes
from ghzstab.construct import parity_rotation_image
from ghzstab.errors import DomainError, PreconditionError
from ghzstab.linalg import SubspaceBasis, single_party_reduced


def rationals(*pairs):
    return DirectionList.from_rationals(list(pairs))


def test_canonical_angles_recipes():
    d3 = canonical_angles(3)
    assert [(t.numerator, t.denominator) for t in d3.thetas] == [(2, 3)] * 3
    d4 = canonical_angles(4)
    assert [(t.numerator, t.denominator) for t in d4.thetas] == [
        (4, 5), (2, 5), (2, 5), (2, 5),
    ]
    with pytest.raises(DomainError):
        canonical_angles(1)


@pytest.mark.parametrize("n", range(2, 13))
def test_canonical_angles_classify_unique(n):
    report = classify(canonical_angles(n))
    assert report.mode == "exact"
    assert report.case is StabilizerCase.UNIQUE_GHZ
    assert report.patterns.members[0].bits == 0


def test_canonical_five_pattern():
    patterns = classify(canonical_angles(5)).patterns
    assert [str(m) for m in patterns.members] == ["00000"]


def test_bitstring_phase_examples():
    zero = Angle.exact(0)
    assert bitstring_phase(BitString.from_string("00"), [zero, zero]) == 1
    assert bitstring_phase(
        BitString.from_string("11"), [zero, zero]
    ) == pytest.approx(-1)
    got = bitstring_phase(
        BitString.from_string("11"), [Angle.exact(1, 2), zero]
    )
    assert got == pytest.approx(-1j)


def test_ghz_from_pattern_epr():
    d = rationals((1, 2), (1, 2))
    state = ghz_from_pattern(d, BitString.from_string("01"))
    epr = np.zeros(4, dtype=complex)
    epr[0] = epr[3] = 1 / math.sqrt(2)
    assert np.allclose(state.amplitudes, epr, atol=1e-12)


def test_ghz_from_pattern_minus():
    d = rationals((1, 2), (1, 2))
    state = ghz_from_pattern(d, BitString.from_string("00"))
    expected = np.zeros(4, dtype=complex)
    expected[0], expected[3] = 1 / math.sqrt(2), -1 / math.sqrt(2)
    assert np.allclose(state.amplitudes, expected, atol=1e-12)


def test_ghz_from_pattern_requires_leading_zero():
    with pytest.raises(PreconditionError):
        ghz_from_pattern(rationals((1, 2), (1, 2)), BitString.from_string("10"))


def test_ghz_from_pattern_maximally_mixed_marginals(rng):
    for n in [2, 3, 4]:
        d = DirectionList.of(
            [Angle.radians(rng.uniform(0, 2 * math.pi)) for _ in range(n)],
            [Angle.radians(rng.uniform(0, 2 * math.pi)) for _ in range(n)],
        )
        m = BitString(n, int(rng.integers(0, 1 << (n - 1))))
        state = ghz_from_pattern(d, m)
        for party in range(1, n + 1):
            rho = single_party_reduced(state, party)
            assert np.allclose(rho, np.eye(2) / 2, atol=1e-10)


def test_solver_state_matches_pattern_state():
    for n in range(2, 10):
        d = canonical_angles(n)
        report = solve_common_eigenspace(d)
        assert report.dimension == 1
        state = ghz_from_pattern(d, report.classification.patterns.members[0])
        assert fidelity(report.basis.vectors[0], state) >= 1 - 1e-9


def test_parity_rotation_identity():
    for n in range(1, 11):
        image = parity_rotation_image(n)
        s0 = parity_classes(n).s0
        expected = np.zeros(1 << n, dtype=complex)
        expected[s0] = 2.0
        assert np.array_equal(image, expected)


def test_local_phase_basis_unitary():
    d = rationals((2, 3), (2, 3), (2, 3))
    basis = local_phase_basis(d, BitString(3, 0))
    for party in (1, 2, 3):
        u = basis.frame_unitary(party)
        assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
        assert abs(abs(basis.phases[party - 1]) - 1.0) <= 1e-12


def test_ghz_spec_validation():
    with pytest.raises(DomainError):
        GHZSpec.from_matrices([np.eye(2), 2 * np.eye(2)])
    spec = GHZSpec.identity(3)
    assert np.allclose(
        spec.to_state().amplitudes, StateVector.ghz(3).amplitudes
    )


def test_ghz_spec_marginals(rng):
    spec = GHZSpec.random(4, rng)
    state = spec.to_state()
    for party in range(1, 5):
        rho = single_party_reduced(state, party)
        eigs = np.linalg.eigvalsh(rho)
        assert np.allclose(eigs, [0.5, 0.5], atol=1e-10)


def test_stabilizing_pair_identity_spec():
    pair = stabilizing_pair_for(GHZSpec.identity(2))
    ghz = StateVector.ghz(2)
    assert fidelity(pair.target, ghz) >= 1 - 1e-12
    assert pair.residual <= 1e-9
    oracle = brute_force_eigenspace(pair.a, pair.b)
    assert oracle.count == 1
    assert fidelity(oracle.vectors[0], ghz) >= 1 - 1e-9


def test_stabilizing_pair_hadamard_spec():
    h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    pair = stabilizing_pair_for(GHZSpec.from_matrices([h, h, h]))
    s0 = parity_classes(3).s0
    expected = np.zeros(8, dtype=complex)
    expected[s0] = 0.5
    assert abs(np.vdot(expected, pair.target.amplitudes)) >= 1 - 1e-12
    assert brute_force_eigenspace(pair.a, pair.b).count == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_stabilizing_pair_random_specs(n, rng):
    for _ in range(5):
        spec = GHZSpec.random(n, rng)
        pair = stabilizing_pair_for(spec)
        assert pair.residual <= 1e-9
        a_full = pair.a.full.entries
        t = pair.target.amplitudes
        assert np.linalg.norm(a_full @ t - t) <= 1e-9


def test_canonical_any_phi_still_unique(rng):
    # for odd party counts the recipe tolerates arbitrary phases
    for n in [3, 5, 7]:
        d = canonical_angles(n)
        phis = [Angle.radians(rng.uniform(0, 2 * math.pi)) for _ in range(n)]
        d_phi = DirectionList.of(d.thetas, phis)
        assert classify(d_phi).case is StabilizerCase.UNIQUE_GHZ
        assert solve_common_eigenspace(d_phi).dimension == 1


def test_lu_covariance(rng):
    # conjugating both observables by local unitaries maps the eigenspace
    # by the same unitaries
    from ghzstab.linalg import Operator, apply_locals
    from ghzstab.observables import ProductObservable

    d = rationals((1, 2), (1, 2))
    base_a = product_observable(d)
    base_b = sigma_z_product(2)
    for _ in range(5):
        spec = GHZSpec.random(2, rng)
        v = [u.entries for u in spec.local_unitaries]
        conj_a = ProductObservable(
            [Operator.from_entries(v[l] @ base_a.locals[l].entries @ v[l].conj().T)
             for l in range(2)]
        )
        conj_b = ProductObservable(
            [Operator.from_entries(v[l] @ base_b.locals[l].entries @ v[l].conj().T)
             for l in range(2)]
        )
        original = brute_force_eigenspace(base_a, base_b)
        rotated = brute_force_eigenspace(conj_a, conj_b)
        mapped = np.column_stack(
            [apply_locals(np.stack(v), original.matrix[:, k])
             for k in range(original.count)]
        )
        mapped_basis = SubspaceBasis(dim=4, matrix=mapped)
        assert subspace_distance(rotated, mapped_basis) <= 1e-7


def test_degenerate_candidates_all_z():
    d = rationals((1, 1), (1, 1), (0, 1))
    report = degenerate_ghz_candidates(d)
    assert len(report.candidates) == 4
    assert report.oracle_dimension == 4
    assert report.audit_distance <= 1e-10
    # candidates are mutually orthogonal even-parity GHZ-type states
    mat = np.column_stack([c.amplitudes for c in report.candidates])
    gram = mat.conj().T @ mat
    assert np.allclose(gram, np.eye(4), atol=1e-12)


def test_degenerate_candidates_two_pattern_case():
    d = rationals((2, 3), (2, 3), (2, 3), (0, 1))
    report = degenerate_ghz_candidates(d)
    assert len(report.candidates) == 2
    assert report.oracle_dimension == 2
    assert report.audit_distance <= 1e-10


def test_degenerate_candidates_all_pi_four_parties():
    # theta = (pi, pi, pi, pi): every leading-zero pattern vanishes, and the
    # candidate count matches the enumerated pattern set
    d = rationals((1, 1), (1, 1), (1, 1), (1, 1))
    patterns = classify(d).patterns
    assert len(patterns.members) == 8
    report = degenerate_ghz_candidates(d)
    assert len(report.candidates) == len(patterns.members)
    assert report.oracle_dimension == 8
    assert report.audit_distance <= 1e-10


def test_degenerate_candidates_pair_of_equal_observables():
    d = rationals((0, 1), (0, 1))
    report = degenerate_ghz_candidates(d)
    assert len(report.candidates) == 2
    assert report.oracle_dimension == 2


def test_degenerate_requires_degenerate_input():
    with pytest.raises(PreconditionError):
        degenerate_ghz_candidates(rationals((1, 2), (1, 2)))
