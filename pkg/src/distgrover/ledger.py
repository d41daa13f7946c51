"""Exact query accounting.

Quantum queries count phase-oracle applications; classical queries count
plain evaluations used to verify measured candidates. Every complexity claim
in the library is checked against these counters, never against wall clock.
"""

from __future__ import annotations


class QueryLedger:
    def __init__(self) -> None:
        self.quantum_queries = 0
        self.classical_queries = 0
        self.breakdown: dict[str, int] = {}

    def add_quantum(self, count: int, phase: str = "quantum") -> None:
        if count < 0:
            raise ValueError("query counts are monotone")
        self.quantum_queries += count
        self.breakdown[phase] = self.breakdown.get(phase, 0) + count

    def add_classical(self, count: int, phase: str = "verify") -> None:
        if count < 0:
            raise ValueError("query counts are monotone")
        self.classical_queries += count
        self.breakdown[phase] = self.breakdown.get(phase, 0) + count

    @property
    def total(self) -> int:
        return self.quantum_queries + self.classical_queries

    def merge(self, other: "QueryLedger") -> None:
        self.quantum_queries += other.quantum_queries
        self.classical_queries += other.classical_queries
        for phase, count in other.breakdown.items():
            self.breakdown[phase] = self.breakdown.get(phase, 0) + count

    def snapshot(self) -> dict:
        return {
            "quantum_queries": self.quantum_queries,
            "classical_queries": self.classical_queries,
            "total": self.total,
            "breakdown": dict(self.breakdown),
        }

    def __repr__(self) -> str:
        return (f"QueryLedger(quantum={self.quantum_queries}, "
                f"classical={self.classical_queries})")
