import math

import numpy as np
import pytest

from distgrover import (CapacityError, MeasurementDistribution, QueryLedger,
                        UsageError, apply_controlled_powers,
                        apply_diagonal_phase, apply_hadamard_all, init_basis,
                        measurement_distribution, sample)
from distgrover.statevector import StateVector


def test_init_basis_examples():
    assert np.allclose(init_basis(2, 0).amps, [1, 0, 0, 0])
    assert np.allclose(init_basis(1, 1).amps, [0, 1])
    s = init_basis(3, 5)
    assert s.amps[5] == 1 and abs(s.amps).sum() == 1


def test_init_basis_errors():
    with pytest.raises(UsageError):
        init_basis(2, 4)
    with pytest.raises(UsageError):
        init_basis(2, -1)
    with pytest.raises(CapacityError):
        init_basis(40, 0)


def test_capacity_env_override(monkeypatch):
    monkeypatch.setenv("DISTGROVER_MAX_QUBITS", "3")
    with pytest.raises(CapacityError):
        init_basis(4, 0)
    init_basis(3, 0)


def test_hadamard_examples():
    s = apply_hadamard_all(init_basis(1, 0), range(0, 1))
    assert np.allclose(s.amps, [math.sqrt(0.5)] * 2)
    s = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    assert np.allclose(s.amps, [0.5] * 4)
    s = init_basis(1, 1)
    apply_hadamard_all(s, range(0, 1))
    apply_hadamard_all(s, range(0, 1))
    assert np.allclose(s.amps, [0, 1])


def test_hadamard_subregister_msb_convention():
    # qubit 0 is the MSB: H on qubit 0 of |10> spreads over indices {0b00,0b10}
    s = apply_hadamard_all(init_basis(2, 2), range(0, 1))
    assert np.allclose(s.amps, [math.sqrt(0.5), 0, -math.sqrt(0.5), 0])


def test_hadamard_involution_random():
    rng = np.random.default_rng(5)
    for q in (1, 3, 5):
        amps = rng.normal(size=1 << q) + 1j * rng.normal(size=1 << q)
        amps /= np.linalg.norm(amps)
        s = StateVector(q, amps.copy())
        apply_hadamard_all(s, range(0, q))
        apply_hadamard_all(s, range(0, q))
        assert np.abs(s.amps - amps).max() < 1e-9


def test_diagonal_phase_examples():
    s = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    apply_diagonal_phase(s, range(0, 2), lambda v: -1 if v == 0 else 1)
    assert np.allclose(s.amps, [-0.5, 0.5, 0.5, 0.5])

    s = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    apply_diagonal_phase(s, range(0, 2), lambda v: 1)
    assert np.allclose(s.amps, [0.5] * 4)

    s = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    apply_diagonal_phase(s, range(0, 2), lambda v: -1 if v == 3 else 1)
    assert np.allclose(s.amps, [0.5, 0.5, 0.5, -0.5])


def test_diagonal_phase_involution():
    rng = np.random.default_rng(7)
    signs = rng.choice([-1.0, 1.0], size=8)
    amps = rng.normal(size=32) + 1j * rng.normal(size=32)
    amps /= np.linalg.norm(amps)
    s = StateVector(5, amps.copy())
    apply_diagonal_phase(s, range(1, 4), signs)
    apply_diagonal_phase(s, range(1, 4), signs)
    assert np.abs(s.amps - amps).max() < 1e-12


def _z_transform(state):
    # Z on a single qubit
    state.amps[1] *= -1.0
    return state


def test_controlled_powers_examples():
    # m=1, control |0>: target untouched
    s = init_basis(2, 1)  # control=0, target=|1>
    ledger = QueryLedger()
    apply_controlled_powers(s, range(0, 1), _z_transform, 1, ledger)
    assert np.allclose(s.amps, init_basis(2, 1).amps)
    assert ledger.quantum_queries == 1  # 2^1 - 1

    # m=2, control |11> (j=3), Z^3 = Z on target |1>
    s = init_basis(3, 0b111)
    apply_controlled_powers(s, range(0, 2), _z_transform, 1)
    expected = np.zeros(8, dtype=complex)
    expected[0b111] = -1.0
    assert np.allclose(s.amps, expected)

    # m=3: ledger increment 7
    ledger = QueryLedger()
    s = init_basis(4, 0)
    apply_controlled_powers(s, range(0, 3), _z_transform, 1, ledger)
    assert ledger.quantum_queries == 7


def test_controlled_powers_matches_direct_powers():
    # |j>|psi> -> |j>(U^j|psi>) for all j, against explicit repetition
    rng = np.random.default_rng(11)
    m, rest = 3, 2

    def u(state):
        mat = np.array([[0.6, 0.8], [-0.8, 0.6]], dtype=complex)
        arr = state.amps.reshape(2, 2)
        state.amps = (mat @ arr).reshape(-1)
        return state

    psi = rng.normal(size=1 << rest) + 1j * rng.normal(size=1 << rest)
    psi /= np.linalg.norm(psi)
    for j in range(1 << m):
        s = StateVector(m + rest, np.kron(init_basis(m, j).amps, psi))
        apply_controlled_powers(s, range(0, m), u, 1)
        expected = psi.copy()
        for _ in range(j):
            expected = u(StateVector(rest, expected)).amps
        assert np.abs(s.amps - np.kron(init_basis(m, j).amps,
                                       expected)).max() < 1e-9


def test_controlled_powers_register_not_leading():
    # control register in the middle still conditions on its own bits
    s = init_basis(3, 0b010)  # qubit 1 (control) is |1>
    apply_controlled_powers(s, range(1, 2), _z_transform, 1)
    # target = qubits (0, 2); j=1 applies Z once to that 2-qubit register?
    # target is a 2-qubit register; _z_transform flips index 1 of it.
    # qubits (0,2) of |010> are (0,0) -> index 0: no flip.
    assert np.allclose(s.amps, init_basis(3, 0b010).amps)
    s = init_basis(3, 0b011)  # control=1, target bits (0,1) -> index 1
    apply_controlled_powers(s, range(1, 2), _z_transform, 1)
    expected = np.zeros(8, dtype=complex)
    expected[0b011] = -1.0
    assert np.allclose(s.amps, expected)


def test_measurement_distribution_examples():
    s = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    assert np.allclose(measurement_distribution(s, range(0, 2)).probabilities,
                       [0.25] * 4)
    s = init_basis(3, 5)
    d = measurement_distribution(s, range(0, 3))
    assert d.probabilities[5] == 1.0
    # marginal of a sub-register
    s = apply_hadamard_all(init_basis(3, 0), range(1, 3))
    d = measurement_distribution(s, range(0, 1))
    assert np.allclose(d.probabilities, [1.0, 0.0])


def test_sample_point_masses():
    d = MeasurementDistribution(np.eye(8)[5])
    for seed in (0, 1, 12345, 2**63):
        assert sample(d, seed) == 5
    d = MeasurementDistribution(np.eye(8)[0])
    assert sample(d, 99) == 0


def test_sample_frequencies_match_distribution():
    probs = np.array([0.5, 0.25, 0.125, 0.125])
    d = MeasurementDistribution(probs)
    trials = 100_000
    counts = np.zeros(4)
    for seed in range(trials):
        counts[sample(d, seed)] += 1
    sigma = np.sqrt(trials * probs * (1 - probs))
    assert (np.abs(counts - trials * probs) <= 3 * sigma).all()


def test_norm_preserved_after_operations():
    s = init_basis(4, 3)
    apply_hadamard_all(s, range(0, 4))
    apply_diagonal_phase(s, range(1, 3), lambda v: -1 if v == 2 else 1)
    apply_controlled_powers(s, range(0, 2), _z_transform, 1)
    assert abs(s.norm_squared() - 1.0) < 1e-9
