import math

import numpy as np
import pytest

from distgrover import (BooleanFunction, QueryLedger, UsageError,
                        apply_grover_iterate, apply_hadamard_all,
                        grover_iterations, init_basis,
                        measurement_distribution, run_grover,
                        success_probability)

from conftest import first_k_marked, marked_function


def solution_mass(f, iterations):
    n = f.arity
    state = apply_hadamard_all(init_basis(n, 0), range(0, n))
    for _ in range(iterations):
        apply_grover_iterate(f, state)
    probs = measurement_distribution(state, range(0, n)).probabilities
    return float(probs[f.truth_values() == 1].sum())


def test_iteration_counts():
    assert grover_iterations(2, 1) == 1
    assert grover_iterations(4, 1) == 3
    for n in (1, 3, 6):
        assert grover_iterations(n, 1 << n) == 0


def test_iteration_count_matches_high_precision():
    # floor in doubles agrees with a much finer evaluation at desk scale
    for n in range(1, 27):
        for a in {1, min(3, 1 << n), (1 << n) // 2 or 1, 1 << n}:
            k = grover_iterations(n, a)
            value = math.pi / 4 * math.sqrt((1 << n) / a)
            assert abs(value - round(value)) > 1e-9 or k == round(value)
            assert k <= value < k + 1


def test_iteration_count_errors():
    with pytest.raises(UsageError):
        grover_iterations(3, 0)
    with pytest.raises(UsageError):
        grover_iterations(3, 9)


def test_success_probability_examples():
    assert success_probability(2, 1) == pytest.approx(1.0, abs=1e-12)
    for n in (2, 4, 5):
        assert success_probability(n, 1 << n) == pytest.approx(1.0)
    f = first_k_marked(4, 1)
    assert solution_mass(f, 3) == pytest.approx(success_probability(4, 1),
                                                abs=1e-9)


def test_exact_rotation_case():
    # n=2, a=1: theta = pi/6, one iterate lands exactly on the solution
    f = marked_function(2, [2])
    n = 2
    state = apply_hadamard_all(init_basis(n, 0), range(0, n))
    apply_grover_iterate(f, state)
    probs = measurement_distribution(state, range(0, n)).probabilities
    assert probs[2] == pytest.approx(1.0, abs=1e-12)


def test_iterate_constant_one_returns_uniform_up_to_sign():
    f = BooleanFunction.constant(2, 1)
    state = apply_hadamard_all(init_basis(2, 0), range(0, 2))
    apply_grover_iterate(f, state)
    assert np.abs(np.abs(state.amps) - 0.5).max() < 1e-12


def test_iterate_preserves_two_dim_span():
    # from the uniform start, amplitudes stay equal within each of the
    # solution / non-solution sets
    rng = np.random.default_rng(21)
    for _ in range(5):
        n = int(rng.integers(2, 7))
        t = int(rng.integers(1, 1 << n))
        marked = rng.choice(1 << n, size=t, replace=False)
        f = marked_function(n, marked)
        good = f.truth_values() == 1
        state = apply_hadamard_all(init_basis(n, 0), range(0, n))
        for _ in range(3):
            apply_grover_iterate(f, state)
            for group in (state.amps[good], state.amps[~good]):
                if group.size:
                    assert np.abs(group - group[0]).max() < 1e-12


def test_closed_form_matches_simulation_small():
    for n in range(1, 7):
        for a in range(1, (1 << n) + 1):
            f = first_k_marked(n, a)
            assert solution_mass(f, grover_iterations(n, a)) == pytest.approx(
                success_probability(n, a), abs=1e-9)


def test_run_grover_exact_case():
    f = marked_function(2, [1])
    for seed in (0, 1, 17):
        ledger = QueryLedger()
        out = run_grover(f, 1, seed, ledger)
        assert out.is_solution == 1
        assert out.measured_x == 1
        assert ledger.quantum_queries == 1
        assert ledger.classical_queries == 1


def test_run_grover_no_solutions():
    f = BooleanFunction.constant(3, 0)
    for seed in range(5):
        out = run_grover(f, 1, seed, QueryLedger())
        assert out.is_solution == 0


def test_run_grover_query_accounting():
    f = first_k_marked(6, 3)
    ledger = QueryLedger()
    run_grover(f, 2, 5, ledger)
    assert ledger.quantum_queries == grover_iterations(6, 2)
    assert ledger.classical_queries == 1


def test_run_grover_empirical_frequency():
    n, trials = 6, 4000
    f = first_k_marked(n, 1)
    p = success_probability(n, 1)
    hits = sum(run_grover(f, 1, seed, QueryLedger()).is_solution
               for seed in range(trials))
    sigma = math.sqrt(trials * p * (1 - p))
    assert abs(hits - trials * p) <= 3 * sigma


def test_run_grover_deterministic():
    f = first_k_marked(5, 2)
    a = run_grover(f, 2, 99, QueryLedger())
    b = run_grover(f, 2, 99, QueryLedger())
    assert a == b
