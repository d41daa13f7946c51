"""Boolean functions and their phase oracles.

A BooleanFunction is immutable after construction and backs every oracle in
the package. Three backends: an explicit truth table, a CNF formula, and a
compiled oracle circuit (see the `compiler` module). The phase oracle Z_f
flips the sign of basis states with f(x) = 1 and charges exactly one quantum
query per application regardless of arity.

Inputs x are accepted as integers (basis index, variable 1 / qubit 0 = most
significant bit) or as bit strings.
"""

from __future__ import annotations

import numpy as np

from . import cnf as cnfmod
from .errors import CapacityError, UsageError
from .ledger import QueryLedger
from .statevector import (StateVector, apply_diagonal_phase, max_qubits)


def _as_index(x, arity: int) -> int:
    if isinstance(x, int):
        if not 0 <= x < (1 << arity):
            raise UsageError(f"input {x} out of range for arity {arity}")
        return x
    bits = [int(b) for b in x]
    if len(bits) != arity:
        raise UsageError(f"input of length {len(bits)} does not match "
                         f"arity {arity}")
    index = 0
    for b in bits:
        index = (index << 1) | (b & 1)
    return index


class _TableBackend:
    kind = "truth-table"

    def __init__(self, table: np.ndarray):
        self.table = table

    def truth_values(self) -> np.ndarray:
        return self.table


class _ConstantBackend:
    kind = "constant"

    def __init__(self, arity: int, value: int):
        self.arity = arity
        self.value = value

    def truth_values(self) -> np.ndarray:
        return np.full(1 << self.arity, self.value, dtype=np.uint8)


class _CnfBackend:
    kind = "cnf"

    def __init__(self, formula: cnfmod.CnfFormula):
        self.formula = formula

    def truth_values(self) -> np.ndarray:
        return self.formula.truth_values()


class BooleanFunction:
    """n-variable Boolean function with exact query accounting hooks."""

    def __init__(self, arity: int, backend, label: str = "f"):
        if arity < 1:
            raise UsageError("arity must be >= 1")
        self.arity = arity
        self.backend = backend
        self.label = label
        self._truth_cache: np.ndarray | None = None
        self._signs_cache: np.ndarray | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_truth_table(cls, bits, label: str = "f") -> "BooleanFunction":
        table = np.asarray(
            [int(b) for b in bits] if isinstance(bits, str) else bits,
            dtype=np.uint8)
        size = table.shape[0]
        arity = size.bit_length() - 1
        if size != (1 << arity) or arity < 1:
            raise UsageError(f"truth table length {size} is not a power of "
                             "two >= 2")
        return cls(arity, _TableBackend(table), label)

    @classmethod
    def from_cnf(cls, formula: cnfmod.CnfFormula,
                 label: str = "cnf") -> "BooleanFunction":
        return cls(formula.variable_count, _CnfBackend(formula), label)

    @classmethod
    def constant(cls, arity: int, value: int,
                 label: str | None = None) -> "BooleanFunction":
        label = label or f"const-{int(bool(value))}"
        return cls(arity, _ConstantBackend(arity, int(bool(value))), label)

    @classmethod
    def from_file(cls, path) -> "BooleanFunction":
        """Truth-table text file: first line n, second line 2^n of {0,1}."""
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if len(lines) < 2:
            raise UsageError(f"{path}: expected arity line and table line")
        n = int(lines[0])
        table = lines[1]
        if len(table) != 1 << n or set(table) - {"0", "1"}:
            raise UsageError(f"{path}: table must be 2^{n} characters of 0/1")
        return cls.from_truth_table(table, label=str(path))

    # -- evaluation -------------------------------------------------------

    def evaluate(self, x, ledger: QueryLedger | None = None,
                 phase: str = "verify") -> int:
        """Classical f(x); charges one classical query when a ledger is given."""
        index = _as_index(x, self.arity)
        if ledger is not None:
            ledger.add_classical(1, phase)
        if self.backend.kind == "cnf":
            return self.backend.formula.evaluate(index)
        return int(self.truth_values()[index])

    def truth_values(self) -> np.ndarray:
        """All 2^n values; a test-harness oracle, never charged as queries."""
        if self.arity > max_qubits():
            raise CapacityError(f"arity {self.arity} exceeds exhaustive-"
                                "evaluation capacity")
        if self._truth_cache is None:
            self._truth_cache = self.backend.truth_values()
        return self._truth_cache

    def solution_count(self) -> int:
        return int(self.truth_values().sum())

    def phase_signs(self) -> np.ndarray:
        """(-1)^f(x) over all basis indices."""
        if self._signs_cache is None:
            self._signs_cache = 1.0 - 2.0 * self.truth_values().astype(float)
        return self._signs_cache

    # -- quantum surface ---------------------------------------------------

    def apply_phase_oracle(self, state: StateVector, register: range,
                           ledger: QueryLedger | None = None) -> StateVector:
        """Z_f on `register`: one quantum query."""
        if len(register) != self.arity:
            raise UsageError(f"register width {len(register)} does not match "
                             f"arity {self.arity}")
        if self.backend.kind == "compiled-circuit":
            self.backend.apply_phase(state, register)
        else:
            apply_diagonal_phase(state, register, self.phase_signs())
        if ledger is not None:
            ledger.add_quantum(1, phase="oracle")
        return state

    # -- decomposition ------------------------------------------------------

    def restrict(self, suffix) -> "BooleanFunction":
        """Subfunction f_i(x) = f(x || suffix) on the first n-k variables."""
        bits = format(suffix[0], f"0{suffix[1]}b") if isinstance(
            suffix, tuple) else "".join(str(int(b)) for b in suffix)
        k = len(bits)
        n = self.arity
        if not 1 <= k < n:
            raise UsageError(f"suffix length {k} must be in [1, {n - 1}]")
        label = f"{self.label}|{bits}"
        if self.backend.kind == "cnf":
            restricted = cnfmod.restrict_cnf(self.backend.formula, bits)
            if restricted.constant_false:
                return BooleanFunction.constant(n - k, 0, label)
            if restricted.is_constant_true:
                return BooleanFunction.constant(n - k, 1, label)
            return BooleanFunction(n - k, _CnfBackend(restricted), label)
        if self.backend.kind == "compiled-circuit":
            return self.backend.restrict(bits, label)
        if self.backend.kind == "constant":
            return BooleanFunction.constant(n - k, self.backend.value, label)
        y = int(bits, 2)
        table = self.truth_values().reshape(1 << (n - k), 1 << k)[:, y]
        return BooleanFunction(n - k, _TableBackend(table.copy()), label)


def apply_zero_reflection(state: StateVector, register: range) -> StateVector:
    """Z_0 = I - 2|0><0| on `register`: sign flip only at the all-zero value."""
    signs = np.ones(1 << len(register))
    signs[0] = -1.0
    return apply_diagonal_phase(state, register, signs)


def apply_phase_oracle(f: BooleanFunction, state: StateVector, register: range,
                       ledger: QueryLedger | None = None) -> StateVector:
    return f.apply_phase_oracle(state, register, ledger)
