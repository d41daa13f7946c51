"""Deterministic seed derivation (splitmix64-style mixing).

Every stochastic step in the library draws exactly one uniform double from a
seed produced by `derive`, so runs are reproducible and sub-runs (machines,
sweep attempts) are statistically independent of each other.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive(seed: int, index: int) -> int:
    """Child seed for sub-run `index` of a run seeded with `seed`."""
    return splitmix64((seed & _MASK) ^ splitmix64(index & _MASK))


def unit_double(seed: int) -> float:
    """Uniform double in [0, 1) determined entirely by `seed`."""
    return (splitmix64(seed & _MASK) >> 11) * 2.0**-53
