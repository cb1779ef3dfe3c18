"""Seed derivation and generator construction.

All randomness in the package flows through numpy's PCG64 generator seeded
via SeedSequence. Sub-streams (per tree, per pipeline stage) are derived
with distinct spawn keys so that stream j is reproducible on its own,
independent of whether streams 0..j-1 were ever drawn.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def seed_sequence(seed: int, *key: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed & _MASK64, spawn_key=key)


def generator(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(seed_sequence(seed, *key))


def derive_seed(seed: int, *key: int) -> int:
    """Deterministically fold (seed, key) into a fresh 64-bit integer seed."""
    return int(seed_sequence(seed, *key).generate_state(1, np.uint64)[0])


def as_generator(rng: int | np.random.Generator) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return generator(int(rng))
