"""Dense state-vector simulation of up to 26 qubits.

Bit convention, used everywhere in this package: qubit 0 is the MOST
significant bit of a basis index, so for a q-qubit state the bit of qubit j
in basis index i is ``(i >> (q - 1 - j)) & 1``. Registers are contiguous
qubit ranges given as Python ``range`` objects.

All operations preserve the norm to within 1e-9 (checked after every call)
and are deterministic: there is no hidden global RNG; sampling takes an
explicit seed.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import CapacityError, InvariantError, UsageError
from .seeding import unit_double

DEFAULT_MAX_QUBITS = 26
NORM_TOL = 1e-9
_SQRT_HALF = math.sqrt(0.5)


def max_qubits() -> int:
    """Amplitude-array capacity; override with DISTGROVER_MAX_QUBITS."""
    raw = os.environ.get("DISTGROVER_MAX_QUBITS")
    return int(raw) if raw else DEFAULT_MAX_QUBITS


def check_capacity(qubit_count: int) -> None:
    limit = max_qubits()
    if qubit_count > limit:
        raise CapacityError(
            f"{qubit_count} qubits exceed the supported limit of {limit}")
    if qubit_count < 1:
        raise UsageError("qubit_count must be >= 1")


class StateVector:
    """2^q complex amplitudes; qubit 0 is the MSB of the basis index."""

    __slots__ = ("qubit_count", "amps")

    def __init__(self, qubit_count: int, amps: np.ndarray):
        self.qubit_count = qubit_count
        self.amps = amps

    def copy(self) -> "StateVector":
        return StateVector(self.qubit_count, self.amps.copy())

    def norm_squared(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def __len__(self) -> int:
        return self.amps.shape[0]


class MeasurementDistribution:
    """Exact outcome probabilities of a measured sub-register."""

    __slots__ = ("probabilities",)

    def __init__(self, probabilities: np.ndarray):
        p = np.asarray(probabilities, dtype=float)
        if p.min(initial=0.0) < -NORM_TOL:
            raise InvariantError("negative probability")
        if abs(p.sum() - 1.0) > NORM_TOL:
            raise InvariantError("probabilities do not sum to 1")
        self.probabilities = np.clip(p, 0.0, None)

    def __len__(self) -> int:
        return self.probabilities.shape[0]


def _check_register(qubit_count: int, register: range) -> None:
    if register.step != 1 or len(register) == 0:
        raise UsageError("register must be a non-empty contiguous range")
    if register.start < 0 or register.stop > qubit_count:
        raise UsageError(
            f"register {register} out of bounds for {qubit_count} qubits")


def _split_shape(qubit_count: int, register: range) -> tuple[int, int, int]:
    # (2^before, 2^width, 2^after) factorization of the amplitude array
    width = len(register)
    before = 1 << register.start
    after = 1 << (qubit_count - register.stop)
    return before, 1 << width, after


def _check_norm(state: StateVector) -> StateVector:
    if abs(state.norm_squared() - 1.0) > NORM_TOL:
        raise InvariantError("state norm drifted beyond tolerance")
    return state


def init_basis(qubit_count: int, basis_index: int) -> StateVector:
    """Computational basis state |basis_index> on `qubit_count` qubits."""
    check_capacity(qubit_count)
    dim = 1 << qubit_count
    if not 0 <= basis_index < dim:
        raise UsageError(f"basis index {basis_index} out of range for "
                         f"{qubit_count} qubits")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(qubit_count, amps)


def apply_hadamard_all(state: StateVector, register: range) -> StateVector:
    """Walsh-Hadamard transform on every qubit of `register` (in place)."""
    _check_register(state.qubit_count, register)
    q = state.qubit_count
    for j in register:
        m = state.amps.reshape(1 << j, 2, -1)
        top = m[:, 0, :].copy()
        bot = m[:, 1, :]
        m[:, 0, :] = (top + bot) * _SQRT_HALF
        m[:, 1, :] = (top - bot) * _SQRT_HALF
    assert state.amps.shape == (1 << q,)
    return _check_norm(state)


def apply_diagonal_phase(state: StateVector, register: range,
                         phase_predicate) -> StateVector:
    """Multiply each amplitude by the +-1 value of its register bits.

    `phase_predicate` is either a callable basis-value -> {+1, -1} or a
    precomputed array of 2^width signs.
    """
    _check_register(state.qubit_count, register)
    before, mid, after = _split_shape(state.qubit_count, register)
    if callable(phase_predicate):
        signs = np.fromiter((phase_predicate(v) for v in range(mid)),
                            dtype=np.float64, count=mid)
    else:
        signs = np.asarray(phase_predicate, dtype=np.float64)
        if signs.shape != (mid,):
            raise UsageError("sign array length must be 2^register-width")
    state.amps.reshape(before, mid, after)[:] *= signs[None, :, None]
    return _check_norm(state)


def apply_controlled_powers(state: StateVector, control_register: range,
                            target_unitary, query_cost_per_application: int,
                            ledger=None) -> StateVector:
    """For each control basis value j, apply `target_unitary` j times to the
    conditional target branch: |j>|psi> -> |j>(U^j |psi>).

    The target register is everything outside `control_register`;
    `target_unitary` maps a StateVector of that width to itself. The ledger
    is charged (2^m - 1) * cost, the standard phase-estimation accounting,
    independent of how the simulation realizes the powers. A `target_unitary`
    exposing an ``apply_batch(matrix)`` method is applied branch-batched.
    """
    q = state.qubit_count
    _check_register(q, control_register)
    m = len(control_register)
    if m >= q:
        raise UsageError("control register must leave a non-empty target")
    rest = q - m

    arr = state.amps.reshape([2] * q)
    axes = list(control_register) + [j for j in range(q)
                                     if j not in control_register]
    mat = np.transpose(arr, axes).reshape(1 << m, 1 << rest).copy()

    if hasattr(target_unitary, "apply_batch"):
        # branch j has had U applied r times once all rounds r <= j ran
        for r in range(1, 1 << m):
            mat[r:] = target_unitary.apply_batch(mat[r:])
    else:
        for j in range(1, 1 << m):
            branch = StateVector(rest, mat[j])
            for _ in range(j):
                branch = target_unitary(branch)
            mat[j] = branch.amps

    inv = np.argsort(axes)
    state.amps = np.transpose(mat.reshape([2] * q), inv).reshape(-1).copy()
    if ledger is not None:
        ledger.add_quantum(((1 << m) - 1) * query_cost_per_application,
                           phase="controlled-powers")
    return _check_norm(state)


def measurement_distribution(state: StateVector,
                             register: range) -> MeasurementDistribution:
    """Exact outcome distribution of measuring `register`."""
    _check_register(state.qubit_count, register)
    before, mid, after = _split_shape(state.qubit_count, register)
    probs = np.abs(state.amps.reshape(before, mid, after)) ** 2
    return MeasurementDistribution(probs.sum(axis=(0, 2)))


def sample(distribution: MeasurementDistribution, seed: int) -> int:
    """Inverse-CDF draw over ascending outcome index; fixed by `seed`."""
    u = unit_double(seed)
    cumulative = np.cumsum(distribution.probabilities)
    idx = int(np.searchsorted(cumulative, u, side="right"))
    return min(idx, len(distribution) - 1)
