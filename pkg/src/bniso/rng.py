"""Seeded, splittable randomness and the worker-count knob."""

from __future__ import annotations

import os
import zlib

import numpy as np


def substream(seed: int, command: str, *keys: int) -> np.random.Generator:
    """Independent generator for (seed, command, *keys).

    Streams depend only on their key, never on how work is split across
    workers, so reports are reproducible for any worker count.
    """
    entropy = [int(seed) & (2**64 - 1), zlib.crc32(command.encode()), *map(int, keys)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def worker_count(deterministic: bool = False) -> int:
    if deterministic:
        return 1
    cap = os.environ.get("BNISO_THREADS")
    avail = os.cpu_count() or 1
    if cap:
        try:
            return max(1, min(int(cap), avail))
        except ValueError:
            pass
    return avail


def random_network_table(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 1 << n, size=1 << n)
