"""Per-stage seed derivation for randomized corpora.

One 64-bit run seed is mixed with a hash of the stage name through a splitmix64
finalizer, so each stage draws from its own reproducible stream.
"""
import hashlib
import random

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    z = (state + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, stage: str) -> int:
    tag = int.from_bytes(hashlib.blake2b(stage.encode("utf-8"), digest_size=8).digest(), "big")
    return splitmix64((seed & MASK64) ^ tag)


def stage_rng(seed: int, stage: str) -> random.Random:
    return random.Random(derive_seed(seed, stage))
