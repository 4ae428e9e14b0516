"""Configurations, networks, interaction graphs and dynamics of Γ(f).

A configuration of {0,1}^n is stored as an integer word: bit (i-1) holds
component i. Components are 1-based in every public signature, matching the
usual [n] = {1, ..., n} convention; bits are 0-based internally.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_N = 24


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class InvariantViolation(AssertionError):
    """A construction produced output contradicting its guarantee.

    Raised only when a verified postcondition fails; every instance is a
    falsification candidate and should be reported with a reproducer.
    """


# -- configurations ---------------------------------------------------------


def e(i: int) -> int:
    """Unit configuration with component i (1-based) set."""
    return 1 << (i - 1)


def ones(n: int) -> int:
    return (1 << n) - 1


def weight(x: int) -> int:
    return x.bit_count()


def component(x: int, i: int) -> int:
    return (x >> (i - 1)) & 1


def to_bits(x: int, n: int) -> str:
    """Render x as the string x_1 x_2 ... x_n."""
    return "".join(str((x >> b) & 1) for b in range(n))


def from_bits(s: str) -> int:
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"not a binary string: {s!r}")
    return sum(1 << b for b, ch in enumerate(s) if ch == "1")


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise PreconditionError(f"n must be an integer in [1, {MAX_N}], got {n!r}")


# -- networks ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Network:
    """An n-component Boolean network given by its full truth table."""

    n: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        _check_n(self.n)
        arr = np.array(self.table, dtype=np.int64).reshape(-1)
        if arr.shape[0] != 1 << self.n:
            raise PreconditionError(f"table must have 2^{self.n} entries, got {arr.shape[0]}")
        if arr.size and (arr.min() < 0 or arr.max() >= 1 << self.n):
            raise PreconditionError("table entries must lie in [0, 2^n)")
        arr.flags.writeable = False
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "table", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 4:
            return f"Network(n={self.n}, table={self.values})"
        return f"Network(n={self.n}, table=<{self.size} entries>)"

    def __call__(self, x: int) -> int:
        return self.values[x]

    @classmethod
    def identity(cls, n: int) -> Network:
        return cls(n, np.arange(1 << n))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> Network:
        return cls(n, np.full(1 << n, value))

    @classmethod
    def from_function(cls, n: int, fn) -> Network:
        return cls(n, [fn(x) for x in range(1 << n)])

    @property
    def size(self) -> int:
        return 1 << self.n

    @cached_property
    def values(self) -> tuple[int, ...]:
        return tuple(self.table.tolist())

    @cached_property
    def preimage_counts(self) -> np.ndarray:
        counts = np.bincount(self.table, minlength=self.size)
        counts.flags.writeable = False
        return counts

    def preimage(self, targets: Iterable[int]) -> set[int]:
        mask = np.zeros(self.size, dtype=bool)
        mask[list(targets)] = True
        return set(np.flatnonzero(mask[self.table]).tolist())

    def image(self, xs: Iterable[int] | None = None) -> set[int]:
        if xs is None:
            return set(np.unique(self.table).tolist())
        v = self.values
        return {v[x] for x in xs}

    def fixed_points(self) -> list[int]:
        return np.flatnonzero(self.table == np.arange(self.size)).tolist()

    def is_identity(self) -> bool:
        return bool(np.all(self.table == np.arange(self.size)))

    def is_constant(self) -> bool:
        return bool(np.all(self.table == self.table[0]))


# -- interaction graphs -----------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    """Labeled digraph on [n]; ``rows[j-1]`` has bit (i-1) set iff arc j -> i."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise ValueError("need exactly one row per vertex")
        full = ones(self.n)
        if any(r & ~full for r in self.rows):
            raise ValueError("row mask exceeds vertex range")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))

    @classmethod
    def complete(cls, n: int) -> Digraph:
        return cls(n, (ones(n),) * n)

    @classmethod
    def empty(cls, n: int) -> Digraph:
        return cls(n, (0,) * n)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
        rows = [0] * n
        for j, i in arcs:
            if not (1 <= j <= n and 1 <= i <= n):
                raise ValueError(f"arc ({j}, {i}) outside [1, {n}]")
            rows[j - 1] |= e(i)
        return cls(n, tuple(rows))

    @classmethod
    def from_code(cls, n: int, code: int) -> Digraph:
        mask = ones(n)
        return cls(n, tuple((code >> (j * n)) & mask for j in range(n)))

    @property
    def code(self) -> int:
        """Injective integer encoding: bit (j-1)*n + (i-1) for arc j -> i."""
        return sum(r << (j * self.n) for j, r in enumerate(self.rows))

    def has_arc(self, j: int, i: int) -> bool:
        return bool((self.rows[j - 1] >> (i - 1)) & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [
            (j + 1, i + 1)
            for j, r in enumerate(self.rows)
            for i in range(self.n)
            if (r >> i) & 1
        ]

    def arc_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    @property
    def adj(self) -> np.ndarray:
        """Dense n x n 0/1 matrix with adj[j-1, i-1] = 1 iff arc j -> i."""
        return np.array(
            [[(r >> i) & 1 for i in range(self.n)] for r in self.rows], dtype=np.uint8
        )

    def is_complete(self) -> bool:
        return all(r == ones(self.n) for r in self.rows)

    def in_degree(self, i: int) -> int:
        return sum((r >> (i - 1)) & 1 for r in self.rows)

    def out_degree(self, j: int) -> int:
        return self.rows[j - 1].bit_count()


def dependency_rows(tables: np.ndarray, n: int) -> np.ndarray:
    """Interaction rows for a batch of tables of shape (P, 2^n).

    Returns shape (P, n): entry [p, j] is the mask of components i such
    that f_i depends on input j+1. For each j the table is viewed as blocks
    of two halves that differ only in bit j; XOR of the halves marks every
    output bit that flips.
    """
    tables = np.asarray(tables)
    P = tables.shape[0]
    out = np.empty((P, n), dtype=np.int64)
    for j in range(n):
        b = 1 << j
        v = tables.reshape(P, -1, 2, b)
        diff = v[:, :, 0, :] ^ v[:, :, 1, :]
        out[:, j] = np.bitwise_or.reduce(diff.reshape(P, -1), axis=1)
    return out


def graph_codes(tables: np.ndarray, n: int) -> np.ndarray:
    """Digraph codes (see ``Digraph.code``) for a batch of tables."""
    rows = dependency_rows(tables, n)
    shifts = np.arange(n, dtype=np.int64) * n
    if n * n > 62:
        return np.array([sum(int(r) << int(s) for r, s in zip(row, shifts)) for row in rows], dtype=object)
    return np.bitwise_or.reduce(rows << shifts, axis=1)


def interaction_graph(f: Network) -> Digraph:
    rows = dependency_rows(f.table[None, :], f.n)[0]
    return Digraph(f.n, tuple(int(r) for r in rows))


# -- dynamics ---------------------------------------------------------------


@dataclass(frozen=True)
class CycleDecomposition:
    fixed_points: frozenset[int]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def long_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycles if len(c) >= 3)

    def cycle_lengths(self) -> list[int]:
        return sorted([1] * len(self.fixed_points) + [len(c) for c in self.cycles])


def cycle_decomposition(f: Network) -> CycleDecomposition:
    """Fixed points and limit cycles of the functional graph of f.

    Each cycle of length >= 2 is listed in orbit order starting from its
    minimum configuration; cycles are sorted by that minimum.
    """
    v = f.values
    state = [0] * f.size  # 0 unseen, 1 on current path, 2 done
    fixed: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    for start in range(f.size):
        if state[start]:
            continue
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = v[x]
        if state[x] == 1:
            cyc = path[path.index(x):]
            if len(cyc) == 1:
                fixed.add(x)
            else:
                m = cyc.index(min(cyc))
                cycles.append(tuple(cyc[m:] + cyc[:m]))
        for y in path:
            state[y] = 2
    cycles.sort(key=lambda c: c[0])
    return CycleDecomposition(frozenset(fixed), tuple(cycles))


def is_independent(f: Network, A: Iterable[int]) -> bool:
    A = set(A)
    v = f.values
    return all(v[x] not in A for x in A)


def large_independent_set(f: Network) -> set[int]:
    """Independent set of size >= (2^n - |F| - |L|) / 2.

    F is the set of fixed points and L holds the minimum configuration of
    each limit cycle of length >= 3. What remains of Γ(f) only has cycles of
    length two, so each weakly connected component is 2-colored and its
    larger color class kept (ties go to the class holding the component's
    minimum vertex).
    """
    dec = cycle_decomposition(f)
    removed = set(dec.fixed_points) | {c[0] for c in dec.long_cycles}
    v = f.values
    nbrs: list[list[int]] = [[] for _ in range(f.size)]
    for x in range(f.size):
        y = v[x]
        if x in removed or y in removed or x == y:
            continue
        nbrs[x].append(y)
        nbrs[y].append(x)

    color = [-1] * f.size
    chosen: set[int] = set()
    for root in range(f.size):
        if root in removed or color[root] != -1:
            continue
        color[root] = 0
        classes: tuple[list[int], list[int]] = ([root], [])
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    classes[color[y]].append(y)
                    queue.append(y)
                elif color[y] == color[x]:
                    raise InvariantViolation(
                        f"odd cycle through {x} and {y} after removing fixed points "
                        "and long-cycle representatives"
                    )
        # root is the component minimum since roots are scanned in order
        big = classes[0] if len(classes[0]) >= len(classes[1]) else classes[1]
        chosen.update(big)
    return chosen
