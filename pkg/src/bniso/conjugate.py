"""Permutations of {0,1}^n and conjugation of networks by them."""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

import numpy as np

from .core import Network, PreconditionError, cycle_decomposition, _check_n

EXHAUSTIVE_MAX_N = 3


@dataclass(frozen=True, eq=False)
class Perm:
    n: int
    map: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        arr = np.array(self.map, dtype=np.int64).reshape(-1)
        size = 1 << self.n
        if arr.shape[0] != size:
            raise PreconditionError(f"permutation must have 2^{self.n} entries")
        seen = np.zeros(size, dtype=bool)
        if arr.min() < 0 or arr.max() >= size:
            raise PreconditionError("permutation entries must lie in [0, 2^n)")
        seen[arr] = True
        if not seen.all():
            raise PreconditionError("map is not a bijection")
        arr.flags.writeable = False
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "map", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.map, other.map)

    def __hash__(self) -> int:
        return hash((self.n, self.map.tobytes()))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(n, np.arange(1 << n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> Perm:
        return cls(n, rng.permutation(1 << n))

    @cached_property
    def inverse_map(self) -> np.ndarray:
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(self.map.size)
        inv.flags.writeable = False
        return inv

    def inverse(self) -> Perm:
        return Perm(self.n, self.inverse_map)

    def compose(self, inner: Perm) -> Perm:
        """Return self ∘ inner."""
        if inner.n != self.n:
            raise PreconditionError("size mismatch")
        return Perm(self.n, self.map[inner.map])

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "map": self.map.tolist()}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Perm:
        return cls(int(d["n"]), [int(v) for v in d["map"]])


class PartialPerm(dict):
    """Injective source -> target assignment, checked on every insert."""

    def __init__(self, pairs: Iterable[tuple[int, int]] | Mapping[int, int] = ()):
        super().__init__()
        self._targets: set[int] = set()
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        for s, t in items:
            self[s] = t

    def __setitem__(self, source: int, target: int) -> None:
        source, target = int(source), int(target)
        if source in self:
            if self[source] == target:
                return
            raise PreconditionError(f"source {source} already mapped to {self[source]}")
        if target in self._targets:
            raise PreconditionError(f"target {target} already used")
        super().__setitem__(source, target)
        self._targets.add(target)

    def assign_sets(self, sources: Iterable[int], targets: Iterable[int]) -> None:
        """Map sorted ``sources`` onto sorted ``targets`` elementwise."""
        sources, targets = sorted(sources), sorted(targets)
        if len(sources) != len(targets):
            raise PreconditionError("set sizes differ")
        for s, t in zip(sources, targets):
            self[s] = t


def complete_partial(pp: Mapping[int, int], n: int) -> Perm:
    """Extend pp to a full permutation of {0,1}^n.

    Unassigned sources take the unassigned targets in increasing order.
    """
    size = 1 << n
    if len(set(pp.values())) != len(pp):
        raise PreconditionError("targets are not pairwise distinct")
    for s, t in pp.items():
        if not (0 <= s < size and 0 <= t < size):
            raise PreconditionError(f"pair ({s}, {t}) outside [0, {size})")
    m = np.full(size, -1, dtype=np.int64)
    used = np.zeros(size, dtype=bool)
    for s, t in pp.items():
        m[s] = t
        used[t] = True
    free_src = np.flatnonzero(m < 0)
    m[free_src] = np.flatnonzero(~used)
    return Perm(n, m)


def conjugate(f: Network, p: Perm) -> Network:
    """h = p ∘ f ∘ p⁻¹, so that h ∘ p = p ∘ f."""
    if f.n != p.n:
        raise PreconditionError(f"size mismatch: network n={f.n}, perm n={p.n}")
    h = Network(f.n, p.map[f.table[p.inverse_map]])
    if __debug__:
        assert np.array_equal(h.table[p.map], p.map[f.table])
    return h


def _cycle_signature(f: Network) -> tuple:
    dec = cycle_decomposition(f)
    return (len(dec.fixed_points), sorted(len(c) for c in dec.cycles),
            sorted(Counter(f.preimage_counts.tolist()).items()))


def find_isomorphism(f: Network, h: Network, override: bool = False) -> Perm | None:
    """Some π with h ∘ π = π ∘ f, or None.

    Cycle structure and preimage-count profiles are compared first. The
    search then assigns π(0), π(1), ... in order; each choice π(x) = y
    forces π(f(x)) = h(y), which is propagated before branching again.
    """
    if f.n != h.n:
        raise PreconditionError("size mismatch")
    if f.n > EXHAUSTIVE_MAX_N and not override:
        raise PreconditionError(
            f"isomorphism search refused for n={f.n} > {EXHAUSTIVE_MAX_N} without override"
        )
    if _cycle_signature(f) != _cycle_signature(h):
        return None

    size = f.size
    fv, hv = f.values, h.values
    fdeg, hdeg = f.preimage_counts.tolist(), h.preimage_counts.tolist()
    pi = [-1] * size
    used = [False] * size

    def assign(x: int, y: int, trail: list[int]) -> bool:
        while True:
            if pi[x] != -1:
                return pi[x] == y
            if used[y] or fdeg[x] != hdeg[y]:
                return False
            pi[x] = y
            used[y] = True
            trail.append(x)
            x, y = fv[x], hv[y]

    def undo(trail: list[int]) -> None:
        for x in trail:
            used[pi[x]] = False
            pi[x] = -1

    def search(x: int) -> bool:
        while x < size and pi[x] != -1:
            x += 1
        if x == size:
            return True
        for y in range(size):
            if used[y]:
                continue
            trail: list[int] = []
            if assign(x, y, trail) and search(x + 1):
                return True
            undo(trail)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, size + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return None
    p = Perm(f.n, pi)
    assert conjugate(f, p) == h
    return p
