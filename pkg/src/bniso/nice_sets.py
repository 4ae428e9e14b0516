"""k-nice sets and networks whose interaction graph misses a given arc.

A k-nice set of f is a set A of 2k configurations such that |f⁻¹(A)| and
|f⁻¹(A) ∩ A| are both even. A (2^(n-2))-nice set exists exactly when some
conjugate of f has no arc j -> i for a pair of distinct components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator

import numpy as np

from .conjugate import PartialPerm, Perm, complete_partial, conjugate
from .core import (
    InvariantViolation,
    Network,
    PreconditionError,
    e,
    interaction_graph,
)


@dataclass(frozen=True)
class NiceSetReport:
    A: frozenset[int]
    k: int
    preimage_size: int
    overlap_size: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "A": sorted(self.A),
            "k": self.k,
            "preimage": self.preimage_size,
            "overlap": self.overlap_size,
        }


@dataclass(frozen=True)
class ABCSignature:
    alpha: int  # f(x) in A
    beta: int  # |f⁻¹(x)| even
    gamma: int  # |(f⁻¹(x) ∩ A) \ {x}| even


def signature(f: Network, A: set[int], x: int) -> ABCSignature:
    v = f.values
    pre_in_A = sum(1 for y in A if v[y] == x and y != x)
    return ABCSignature(
        alpha=int(v[x] in A),
        beta=int(f.preimage_counts[x] % 2 == 0),
        gamma=int(pre_in_A % 2 == 0),
    )


def _counts(f: Network, A: set[int]) -> tuple[int, int]:
    mask = np.zeros(f.size, dtype=bool)
    mask[list(A)] = True
    pre = mask[f.table]
    return int(pre.sum()), int((pre & mask).sum())


def is_nice(f: Network, A: Iterable[int]) -> NiceSetReport | None:
    A = frozenset(int(x) for x in A)
    if len(A) % 2 or not A:
        raise PreconditionError(f"|A|={len(A)} must be even and >= 2")
    if any(not 0 <= x < f.size for x in A):
        raise PreconditionError("A is not a subset of {0,1}^n")
    pre, overlap = _counts(f, A)
    if pre % 2 or overlap % 2:
        return None
    return NiceSetReport(A, len(A) // 2, pre, overlap)


def is_closed_by(X: Iterable[int], i: int) -> bool:
    X = set(X)
    bit = e(i)
    return all(x ^ bit in X for x in X)


def nice_descent(f: Network, k_min: int = 8) -> Iterator[NiceSetReport]:
    """Yield verified k-nice sets for k = 2^(n-1), 2^(n-1) - 1, ..., k_min.

    Each step removes the first pair (in increasing order) of equivalent,
    independent elements of the current set. Preimage counts inside A are
    maintained incrementally so the signatures stay cheap.
    """
    n = f.n
    if n < 4:
        raise PreconditionError("descent needs n >= 4")
    if not 8 <= k_min <= 1 << (n - 1):
        raise PreconditionError(f"k_min={k_min} outside [8, 2^(n-1)]")
    v = f.values
    deg_even = (f.preimage_counts % 2 == 0).astype(int).tolist()
    inA = [True] * f.size
    # pre_in_A[x] = |f⁻¹(x) ∩ A|
    pre_in_A = f.preimage_counts.astype(int).tolist()
    size = f.size
    preimage_total = size
    overlap_total = size

    def report() -> NiceSetReport:
        A = frozenset(x for x in range(f.size) if inA[x])
        if preimage_total % 2 or overlap_total % 2:
            raise InvariantViolation(f"descent lost niceness at |A|={size}")
        return NiceSetReport(A, size // 2, int(preimage_total), int(overlap_total))

    yield report()
    while size > 2 * k_min:
        buckets: dict[tuple[int, int, int], list[int]] = {}
        pair = None
        for x in range(f.size):
            if not inA[x]:
                continue
            fx = v[x]
            g = pre_in_A[x] - (1 if fx == x else 0)
            key = (int(inA[fx]), deg_even[x], int(g % 2 == 0))
            for y in buckets.setdefault(key, []):
                if v[y] != x and fx != y:
                    pair = (y, x)
                    break
            if pair:
                break
            buckets[key].append(x)
        if pair is None:
            raise InvariantViolation(
                f"no equivalent independent pair in a set of size {size} (>= 18)"
            )
        for x in pair:
            inA[x] = False
            pre_in_A[v[x]] -= 1
        size -= 2
        preimage_total = sum(f.preimage_counts[x] for x in range(f.size) if inA[x])
        overlap_total = sum(pre_in_A[x] for x in range(f.size) if inA[x])
        yield report()


def find_nice_set(f: Network, k: int) -> NiceSetReport:
    n = f.n
    if n < 4:
        raise PreconditionError("n must be >= 4")
    if not 8 <= k <= 1 << (n - 1):
        raise PreconditionError(f"k={k} outside [8, 2^(n-1)]")
    last = None
    for last in nice_descent(f, k):
        pass
    assert last is not None and last.k == k
    if is_nice(f, last.A) is None:
        raise InvariantViolation("descent result fails the parity check")
    return last


def _halves(xs: Iterable[int]) -> tuple[list[int], list[int]]:
    xs = sorted(xs)
    mid = len(xs) // 2
    return xs[:mid], xs[mid:]


def missing_arc_network(
    f: Network, A: NiceSetReport | Iterable[int], i: int, j: int
) -> tuple[Perm, Network]:
    """Conjugate of f with no arc j -> i, built from a (2^(n-2))-nice set."""
    n = f.n
    if i == j:
        raise PreconditionError("i and j must be distinct")
    if not (1 <= i <= n and 1 <= j <= n):
        raise PreconditionError("components outside [n]")
    A = set(A.A if isinstance(A, NiceSetReport) else A)
    if len(A) != 1 << (n - 1) or is_nice(f, A) is None:
        raise PreconditionError("A is not a (2^(n-2))-nice set of f")

    Am = f.preimage(A)
    A1, A2 = _halves(A & Am)
    A3, A4 = _halves(A - Am)
    Am3, Am4 = _halves(Am - A)
    bi, bj = e(i), e(j)
    Y0 = [x for x in range(f.size) if not x & bi and not x & bj]
    Y1 = [x for x in range(f.size) if x & bi and not x & bj]
    X1, X3 = Y0[: len(A1)], Y0[len(A1):]
    Xm3 = Y1[: len(Am3)]
    if len(X3) != len(A3) or len(Xm3) != len(Am3):
        raise InvariantViolation("partition sizes do not fit the target slabs")

    pp = PartialPerm()
    pp.assign_sets(A1, X1)
    pp.assign_sets(A2, [x ^ bj for x in X1])
    pp.assign_sets(A3, X3)
    pp.assign_sets(A4, [x ^ bj for x in X3])
    pp.assign_sets(Am3, Xm3)
    pp.assign_sets(Am4, [x ^ bj for x in Xm3])
    pi = complete_partial(pp, n)
    h = conjugate(f, pi)
    if interaction_graph(h).has_arc(j, i):
        raise InvariantViolation(f"conjugate still has arc {j} -> {i}")
    return pi, h


def nice_from_missing_arc(h: Network, i: int, j: int) -> NiceSetReport:
    """The slab {x : x_i = 0} is (2^(n-2))-nice when G(h) lacks j -> i."""
    if i == j:
        raise PreconditionError("i and j must be distinct")
    if interaction_graph(h).has_arc(j, i):
        raise PreconditionError(f"G(h) has arc {j} -> {i}")
    X = [x for x in range(h.size) if not x & e(i)]
    rep = is_nice(h, X)
    if rep is None:
        raise InvariantViolation("slab is not nice despite the missing arc")
    return rep
