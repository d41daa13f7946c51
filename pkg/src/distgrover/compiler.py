"""CNF phase-oracle circuits.

A formula with m clauses compiles to a palindromic gate list over n input
qubits and a counter register of M = ceil(log2(m+1)) qubits appended after
them: one clause-failure incrementer U_k per clause, a phase flip on the
all-zero counter, then the mirrored decrementers. The counter tracks how
many clauses are false, so the phase flip fires exactly when f(y) = 1, and
the mirror restores the counter to |0..0>.

Each U_k block is X gates on the positively occurring variables (turning the
clause-false pattern into all-ones), a multi-controlled modular increment
with one positive control per literal, and the mirror X gates. ADD is the
cyclic increment modulo m+1 on counter values 0..m, extended as the identity
on values above m: the minimal unitary completion, never reached from |0>
since at most m clauses can fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cnf as cnfmod
from .errors import InvariantError, NotCompilableError, UsageError
from .ledger import QueryLedger
from .oracle import BooleanFunction, _as_index
from .statevector import StateVector, check_capacity

# Elementary-gate accounting for gate_count(elementary=True). Constants model
# the standard ancilla-assisted constructions: a modular incrementer on M
# counter qubits costs ADD_COST_PER_QUBIT * M elementary gates, each control
# on it adds CONTROL_COST via a Toffoli chain, and the counter phase flip
# costs ZERO_PHASE_COST_PER_QUBIT * M. ELEMENTARY_SCALING_CONSTANT is the
# documented C with elementary count <= C * m * ceil(log2(m+1)) for 3CNF.
ADD_COST_PER_QUBIT = 24
CONTROL_COST = 8
ZERO_PHASE_COST_PER_QUBIT = 8
ELEMENTARY_SCALING_CONSTANT = 130


@dataclass(frozen=True)
class PauliX:
    qubit: int
    clause_index: int

    def to_text(self) -> str:
        return f"X q{self.qubit}"


@dataclass(frozen=True)
class MultiControlledAdd:
    controls: tuple[tuple[int, bool], ...]   # (input qubit, polarity)
    modulus: int
    clause_index: int
    subtract: bool = False

    def to_text(self) -> str:
        name = "CSUB" if self.subtract else "CADD"
        ctrls = ",".join(f"{'+' if pol else '-'}q{q}"
                         for q, pol in self.controls)
        return f"{name} mod={self.modulus} ctrls=[{ctrls}]"


@dataclass(frozen=True)
class ZeroPhaseOnCounter:
    width: int
    clause_index: int = -1

    def to_text(self) -> str:
        return f"Z0C width={self.width}"


@dataclass(frozen=True)
class CircuitIR:
    input_qubits: int
    counter_qubits: int
    clause_count: int
    gates: tuple

    def block_count(self) -> int:
        return sum(1 for g in self.gates
                   if not isinstance(g, PauliX))

    def to_text(self) -> str:
        header = (f"oracle n={self.input_qubits} m={self.clause_count} "
                  f"counter={self.counter_qubits}")
        return "\n".join([header] + [g.to_text() for g in self.gates]) + "\n"


def counter_width(clause_count: int) -> int:
    return max(1, math.ceil(math.log2(clause_count + 1)))


def build_add(modulus: int, width: int) -> np.ndarray:
    """Counter permutation: cyclic +1 mod `modulus` on 0..modulus-1,
    identity on the padding values up to 2^width - 1."""
    if (1 << width) < modulus:
        raise UsageError(f"width {width} too small for modulus {modulus}")
    perm = np.arange(1 << width)
    perm[:modulus] = (perm[:modulus] + 1) % modulus
    return perm


def build_sub(modulus: int, width: int) -> np.ndarray:
    perm = np.arange(1 << width)
    perm[:modulus] = (perm[:modulus] - 1) % modulus
    return perm


def build_uk(clause: tuple[int, ...], modulus: int, width: int,
             clause_index: int, subtract: bool = False) -> list:
    """Gate block incrementing (or decrementing) the counter exactly when
    the clause is false under the input assignment."""
    if not clause:
        raise UsageError("cannot build a block for an empty clause")
    flips = [PauliX(abs(lit) - 1, clause_index)
             for lit in clause if lit > 0]
    controls = tuple(sorted((abs(lit) - 1, True) for lit in clause))
    core = MultiControlledAdd(controls=controls, modulus=modulus,
                              clause_index=clause_index, subtract=subtract)
    return flips + [core] + list(reversed(flips))


def compile_phase_oracle(formula: cnfmod.CnfFormula) -> CircuitIR:
    """Palindromic oracle circuit U_1..U_m, Z0(counter), U_m'..U_1'."""
    if formula.constant_false:
        raise NotCompilableError(
            "constant-false formula has no oracle circuit; use a constant "
            "oracle instead")
    m = formula.clause_count
    if m < 1:
        raise NotCompilableError(
            "constant-true formula (no clauses) is not compilable; use a "
            "constant oracle instead")
    width = counter_width(m)
    modulus = m + 1
    gates: list = []
    for idx, clause in enumerate(formula.clauses):
        gates.extend(build_uk(clause, modulus, width, idx))
    gates.append(ZeroPhaseOnCounter(width=width))
    for idx in range(m - 1, -1, -1):
        gates.extend(build_uk(formula.clauses[idx], modulus, width, idx,
                              subtract=True))
    return CircuitIR(input_qubits=formula.variable_count,
                     counter_qubits=width, clause_count=m,
                     gates=tuple(gates))


def simulate_oracle_circuit(circuit: CircuitIR,
                            input_basis) -> tuple[int, int]:
    """Basis-state propagation of the circuit on |y>|0>_C.

    Returns (phase in {+1, -1}, counter restored to zero). Every gate maps
    basis states to basis states, so this is exact integer arithmetic.
    """
    n = circuit.input_qubits
    y = _as_index(input_basis, n)
    bits = [(y >> (n - 1 - j)) & 1 for j in range(n)]
    counter = 0
    phase = 1
    for gate in circuit.gates:
        if isinstance(gate, PauliX):
            bits[gate.qubit] ^= 1
        elif isinstance(gate, MultiControlledAdd):
            if all(bits[q] == int(pol) for q, pol in gate.controls):
                if counter < gate.modulus:
                    counter = (counter + (-1 if gate.subtract else 1)) \
                        % gate.modulus
        else:
            if counter == 0:
                phase = -phase
    return phase, int(counter == 0)


def counter_trace(circuit: CircuitIR, input_basis) -> list[int]:
    """Counter value after each non-X gate; test hook for the unwind and
    no-wrap properties."""
    n = circuit.input_qubits
    y = _as_index(input_basis, n)
    bits = [(y >> (n - 1 - j)) & 1 for j in range(n)]
    counter = 0
    trace = []
    for gate in circuit.gates:
        if isinstance(gate, PauliX):
            bits[gate.qubit] ^= 1
            continue
        if isinstance(gate, MultiControlledAdd):
            if all(bits[q] == int(pol) for q, pol in gate.controls):
                if counter < gate.modulus:
                    counter = (counter + (-1 if gate.subtract else 1)) \
                        % gate.modulus
        trace.append(counter)
    return trace


def apply_circuit(circuit: CircuitIR, amps: np.ndarray, total_qubits: int,
                  register_start: int) -> np.ndarray:
    """Execute the circuit on a full state vector, counter appended as the
    least significant qubits. Input amplitudes cover `total_qubits`; the
    result has the counter projected back out after verifying it returned
    to |0..0> exactly."""
    n = circuit.input_qubits
    width = circuit.counter_qubits
    big_q = total_qubits + width
    check_capacity(big_q)
    dim = 1 << big_q
    counter_mask = (1 << width) - 1

    ext = np.zeros(dim, dtype=np.complex128)
    ext.reshape(-1, 1 << width)[:, 0] = amps
    idx = np.arange(dim)
    cval = idx & counter_mask

    def input_shift(qubit: int) -> int:
        return big_q - 1 - (register_start + qubit)

    for gate in circuit.gates:
        if isinstance(gate, PauliX):
            ext = ext[idx ^ (1 << input_shift(gate.qubit))]
        elif isinstance(gate, MultiControlledAdd):
            ok = np.ones(dim, dtype=bool)
            for q, pol in gate.controls:
                bit = (idx >> input_shift(q)) & 1
                ok &= bit == int(pol)
            ok &= cval < gate.modulus
            delta = 1 if gate.subtract else -1   # source counter offset
            src_counter = (cval + delta) % gate.modulus
            src = np.where(ok, (idx & ~counter_mask) | src_counter, idx)
            ext = ext[src]
        else:
            ext = ext.copy()
            ext[cval == 0] *= -1.0
    final = ext.reshape(-1, 1 << width)
    leak = float(np.abs(final[:, 1:]).max(initial=0.0))
    if leak > 1e-12:
        raise InvariantError(
            f"counter register not restored (residual {leak:.3e})")
    return final[:, 0].copy()


def circuit_diagonal(circuit: CircuitIR) -> np.ndarray:
    """The +-1 diagonal the circuit realizes on the input register."""
    diag = apply_circuit(circuit, np.ones(1 << circuit.input_qubits,
                                          dtype=np.complex128),
                         circuit.input_qubits, 0)
    return diag.real


class _CircuitBackend:
    kind = "compiled-circuit"

    def __init__(self, circuit: CircuitIR, formula: cnfmod.CnfFormula):
        self.circuit = circuit
        self.formula = formula

    def truth_values(self) -> np.ndarray:
        return (circuit_diagonal(self.circuit) < 0).astype(np.uint8)

    def apply_phase(self, state: StateVector, register: range) -> None:
        state.amps = apply_circuit(self.circuit, state.amps,
                                   state.qubit_count, register.start)

    def restrict(self, bits: str, label: str) -> BooleanFunction:
        restricted = cnfmod.restrict_cnf(self.formula, bits)
        sub_arity = self.formula.variable_count - len(bits)
        if restricted.constant_false:
            return BooleanFunction.constant(sub_arity, 0, label)
        if restricted.is_constant_true:
            return BooleanFunction.constant(sub_arity, 1, label)
        return oracle_from_formula(restricted, label)


def oracle_from_circuit(circuit: CircuitIR, formula: cnfmod.CnfFormula,
                        label: str = "compiled") -> BooleanFunction:
    """BooleanFunction whose phase oracle runs the compiled circuit with a
    live counter register (superposition inputs included)."""
    return BooleanFunction(circuit.input_qubits,
                           _CircuitBackend(circuit, formula), label)


def oracle_from_formula(formula: cnfmod.CnfFormula,
                        label: str = "compiled") -> BooleanFunction:
    return oracle_from_circuit(compile_phase_oracle(formula), formula, label)


def gate_count(circuit: CircuitIR, elementary: bool = False) -> int:
    """IR block count (2m + 1) or the documented elementary-gate expansion."""
    if not elementary:
        return circuit.block_count()
    total = 0
    for gate in circuit.gates:
        if isinstance(gate, PauliX):
            total += 1
        elif isinstance(gate, MultiControlledAdd):
            total += (ADD_COST_PER_QUBIT * circuit.counter_qubits
                      + CONTROL_COST * len(gate.controls))
        else:
            total += ZERO_PHASE_COST_PER_QUBIT * gate.width + 2
    return total
