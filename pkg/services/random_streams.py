"""Seeded, named random streams.

All randomness flows from one integer seed. A stream is identified by the
seed and a name ("source", "noise", "train", ...), so adding a new consumer
never shifts the draws of an existing one.
"""
import zlib

import numpy as np


def stream_key(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def make_rng(seed: int, stream: str = "default") -> np.random.Generator:
    """Generator over the counter-based Philox bit generator"""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence([int(seed), stream_key(stream)])
    return np.random.Generator(np.random.Philox(sequence))


def trial_seed(base_seed: int, trial: int) -> int:
    return base_seed + trial
