import math
import random

import numpy as np
import pytest

from distgrover import BooleanFunction
from distgrover.cnf import CnfFormula


def marked_function(n: int, marked) -> BooleanFunction:
    """Truth-table function marking the given basis indices."""
    table = np.zeros(1 << n, dtype=np.uint8)
    table[list(marked)] = 1
    return BooleanFunction.from_truth_table(table)


def first_k_marked(n: int, t: int) -> BooleanFunction:
    return marked_function(n, range(t))


def _phase_kernel(delta: float, grid: int) -> float:
    d = delta % 1.0
    if d < 1e-15 or 1.0 - d < 1e-15:
        return 1.0
    return math.sin(math.pi * grid * d) ** 2 / (
        grid ** 2 * math.sin(math.pi * d) ** 2)


def closed_form_count_distribution(a_g: float, m: int) -> np.ndarray:
    """Independent oracle for the reading-register distribution: the uniform
    start splits evenly over the two conjugate eigenphases of the iterate,
    each contributing the finite-geometric-series kernel."""
    grid = 1 << m
    if a_g == 0.0:
        p = np.zeros(grid)
        p[0] = 1.0
        return p
    if a_g == 1.0:
        p = np.zeros(grid)
        p[grid // 2] = 1.0
        return p
    phi = math.asin(math.sqrt(a_g)) / math.pi
    return np.array([0.5 * _phase_kernel(phi - y / grid, grid)
                     + 0.5 * _phase_kernel(1.0 - phi - y / grid, grid)
                     for y in range(grid)])


def random_3cnf(n: int, m: int, rng: random.Random) -> CnfFormula:
    clauses = []
    for _ in range(m):
        width = rng.choice([1, 2, 3]) if n >= 3 else rng.randint(1, n)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v
                             for v in variables))
    return CnfFormula(variable_count=n, clauses=clauses)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
