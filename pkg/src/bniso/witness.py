"""Constructive K_n witnesses: permutations π with G(π∘f∘π⁻¹) complete.

Each builder assembles a partial permutation from the structure of f
(fixed points, long limit cycles, or a large independent set), completes it
deterministically, conjugates, and verifies the result before returning.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .conjugate import PartialPerm, Perm, complete_partial, conjugate
from .core import (
    InvariantViolation,
    Network,
    PreconditionError,
    cycle_decomposition,
    e,
    interaction_graph,
    is_independent,
    large_independent_set,
    ones,
)


class Route(str, enum.Enum):
    FIXED_POINTS = "FixedPoints"
    LIMIT_CYCLES = "LimitCycles"
    CASE1 = "IndependentSet-case1"
    CASE2A = "IndependentSet-case2a"
    CASE2B = "IndependentSet-case2b"
    CASE2C = "IndependentSet-case2c"


@dataclass(frozen=True)
class WitnessResult:
    pi: Perm
    h: Network
    route: Route

    def to_dict(self) -> dict[str, Any]:
        return {
            "pi": self.pi.to_dict(),
            "h": {"n": self.h.n, "table": list(self.h.values)},
            "route": self.route.value,
        }


def _finish(f: Network, pp: PartialPerm, route: Route) -> WitnessResult:
    pi = complete_partial(pp, f.n)
    h = conjugate(f, pi)
    if not np.array_equal(h.table[pi.map], pi.map[f.table]):
        raise InvariantViolation("h ∘ π != π ∘ f")
    g = interaction_graph(h)
    if not g.is_complete():
        raise InvariantViolation(
            f"{route.value} construction gave {g.arc_count()} arcs, expected {f.n ** 2}"
        )
    return WitnessResult(pi, h, route)


# -- fixed points -----------------------------------------------------------


def witness_from_fixed_points(f: Network) -> WitnessResult:
    n = f.n
    if n < 4:
        # for n = 3 the targets e_1+e_2+1 and e_3 coincide
        raise PreconditionError("fixed-point construction needs n >= 4")
    if f.is_identity():
        raise PreconditionError("f is the identity")
    fixed = f.fixed_points()
    if len(fixed) < 2 * n:
        raise PreconditionError(f"f has {len(fixed)} fixed points, need >= {2 * n}")
    v = f.values
    c = next(x for x in range(f.size) if v[x] != x)
    fc = v[c]
    pool = [x for x in fixed if x != fc][: 2 * n - 1]
    a, b = pool[: n + 1], pool[n + 1:]
    e12 = e(1) | e(2)

    pp = PartialPerm()
    pp[a[0]] = 0
    for i in range(1, n + 1):
        pp[a[i]] = e(i)
    for i, bi in zip(range(3, n + 1), b):
        pp[bi] = e12 ^ e(i)
    pp[c] = e12
    pp[fc] = e12 ^ ones(n)
    return _finish(f, pp, Route.FIXED_POINTS)


# -- limit cycles -----------------------------------------------------------


def witness_from_limit_cycles(f: Network) -> WitnessResult:
    n = f.n
    long_cycles = cycle_decomposition(f).long_cycles
    if len(long_cycles) < n:
        raise PreconditionError(
            f"f has {len(long_cycles)} limit cycles of length >= 3, need >= {n}"
        )
    v = f.values
    pp = PartialPerm()
    for i, cyc in zip(range(1, n + 1), long_cycles):
        a = cyc[0]
        b = v[a]
        c = v[b]
        prev = e(n) if i == 1 else e(i - 1)
        pp[a] = prev ^ e(i)
        pp[b] = prev
        pp[c] = prev ^ ones(n)
    return _finish(f, pp, Route.LIMIT_CYCLES)


# -- disjoint X sets --------------------------------------------------------


def build_X_sets(n: int, k: int, sizes: Sequence[int]) -> list[set[int]]:
    """Disjoint X_1..X_2k of the given sizes covering every direction.

    For every component i there are p and x in X_{2p-1} with x + e_i in
    X_{2p}. Components are handed out in order to the index sets I_l
    (|I_l| = s_l - 1 for odd l, s_l for even l), and each pair of sets is
    built around an anchor x^{2p-1}.
    """
    if n < 5:
        raise PreconditionError("n must be >= 5")
    if not 1 <= k <= n:
        raise PreconditionError(f"k={k} outside [1, {n}]")
    sizes = [int(s) for s in sizes]
    if len(sizes) != 2 * k or any(s < 1 for s in sizes) or sum(sizes) != n + k:
        raise PreconditionError("need 2k positive sizes summing to n+k")

    parts: list[list[int]] = []
    comp = 1
    for ell, s in enumerate(sizes, start=1):
        cnt = s - 1 if ell % 2 else s
        parts.append(list(range(comp, comp + cnt)))
        comp += cnt
    # parts[2p-1] is I_{2p}; it is non-empty because s_{2p} >= 1
    j = [parts[2 * p - 1][0] for p in range(1, k + 1)]  # j[p-1] = j_{2p}

    if k == 1:
        anchors = [0]
    elif k == 2:
        anchors = [0, ones(n)]
    else:
        anchors = [e(j[p - 2]) for p in range(1, k + 1)]  # j_0 = j_{2k}

    X: list[set[int]] = []
    for p in range(1, k + 1):
        x0, jp = anchors[p - 1], j[p - 1]
        odd = {x0} | {x0 ^ e(jp) ^ e(i) for i in parts[2 * p - 2]}
        even = {x0 ^ e(i) for i in parts[2 * p - 1]}
        X += [odd, even]

    _check_X_sets(n, k, sizes, X)
    return X


def _check_X_sets(n: int, k: int, sizes: Sequence[int], X: Sequence[set[int]]) -> None:
    if [len(s) for s in X] != list(sizes):
        raise InvariantViolation("X sets have wrong sizes")
    if len(set().union(*X)) != sum(sizes):
        raise InvariantViolation("X sets are not pairwise disjoint")
    for i in range(1, n + 1):
        if not any(x ^ e(i) in X[2 * p + 1] for p in range(k) for x in X[2 * p]):
            raise InvariantViolation(f"no covering pair for component {i}")


# -- independent sets -------------------------------------------------------


def _classes(f: Network, A: Iterable[int]) -> dict[int, list[int]]:
    v = f.values
    cls: dict[int, list[int]] = defaultdict(list)
    for x in sorted(A):
        cls[v[x]].append(x)
    return dict(cls)


def _trim(f: Network, A: Iterable[int], target: int) -> set[int]:
    """Shrink A to ``target`` elements, always cutting the largest class.

    Ties between classes go to the larger image; within a class the
    largest configuration goes first.
    """
    cls = _classes(f, A)
    total = sum(len(m) for m in cls.values())
    while total > target:
        key = max(cls, key=lambda a: (len(cls[a]), a))
        cls[key].pop()
        if not cls[key]:
            del cls[key]
        total -= 1
    return {x for m in cls.values() for x in m}


def _from_even_images(f: Network, A: set[int], route: Route) -> WitnessResult:
    """Independent A with |f(A)| = 2k and |A| >= n+k."""
    n = f.n
    cls = _classes(f, A)
    k, rem = divmod(len(cls), 2)
    if rem or not 1 <= k <= n or len(A) < n + k:
        raise InvariantViolation(f"even-image construction called with |A|={len(A)}, |f(A)|={len(cls)}")
    A = _trim(f, A, n + k)
    cls = _classes(f, A)
    if len(cls) != 2 * k:
        raise InvariantViolation("trimming emptied an image class")
    images = sorted(cls)
    X = build_X_sets(n, k, [len(cls[a]) for a in images])
    used = set().union(*X)
    full = ones(n)
    spare = []
    for y in range(0, 1 << n, 2):  # y_1 = 0
        if y not in used and (y ^ full) not in used:
            spare.append(y)
            if len(spare) == k:
                break
    if len(spare) < k:
        raise InvariantViolation("not enough spare configurations with y_1 = 0")

    pp = PartialPerm()
    for p in range(k):
        pp[images[2 * p]] = spare[p]
        pp[images[2 * p + 1]] = spare[p] ^ full
    for a, Xp in zip(images, X):
        pp.assign_sets(cls[a], Xp)
    return _finish(f, pp, route)


def _from_single_image(f: Network, A: set[int]) -> WitnessResult:
    """Independent A with |A| > n and f(A) = {a}."""
    n = f.n
    v = f.values
    (a,) = {v[x] for x in A}
    b = next((x for x in range(f.size) if v[x] != a), None)
    if b is None:
        raise PreconditionError("f is constant")
    fa = v[a]
    pp = PartialPerm()
    if fa != a:
        chosen = [x for x in sorted(A) if x != fa][:n]
        pp[a] = 0
        pp[fa] = ones(n)
        for i, ai in enumerate(chosen, start=1):
            pp[ai] = e(i)
        return _finish(f, pp, Route.CASE2A)
    if v[b] == b:
        chosen = sorted(A)[:n]
        pp[a] = ones(n)
        pp[b] = 0
        for i, ai in enumerate(chosen, start=1):
            pp[ai] = e(i)
        return _finish(f, pp, Route.CASE2B)
    sub = [x for x in sorted(A) if x != v[b]][:n]
    return _from_even_images(f, set(sub) | {b}, Route.CASE2C)


def witness_from_independent_set(f: Network, A: Iterable[int]) -> WitnessResult:
    n = f.n
    A = set(int(x) for x in A)
    if n < 5:
        raise PreconditionError("independent-set construction needs n >= 5")
    if f.is_constant():
        raise PreconditionError("f is constant")
    if len(A) < 2 * n:
        raise PreconditionError(f"|A|={len(A)} < 2n={2 * n}")
    if any(not 0 <= x < f.size for x in A) or not is_independent(f, A):
        raise PreconditionError("A is not an independent set of f")

    B = _trim(f, A, 2 * n)
    cls = _classes(f, B)
    m = len(cls)
    if m == 1:
        return _from_single_image(f, B)
    if m % 2 == 0:
        return _from_even_images(f, B, Route.CASE1)

    # odd image count >= 3: drop a smallest class, refill from A if short
    drop = min(cls, key=lambda a: (len(cls[a]), a))
    k = (m - 1) // 2
    B2 = B - set(cls[drop])
    if len(B2) < n + k:
        keep = set(cls) - {drop}
        extra = sorted(x for x in A - B if f.values[x] in keep)
        B2 |= set(extra[: n + k - len(B2)])
    if len(B2) < n + k:
        raise InvariantViolation(
            f"odd case: |A'|={len(B2)} < n+k={n + k} (n={n}, |f(A)|={m})"
        )
    return _from_even_images(f, B2, Route.CASE1)


# -- dispatcher -------------------------------------------------------------


def complete_witness(f: Network, best_effort: bool = False) -> WitnessResult | None:
    """K_n witness for f, trying fixed points, long cycles, independent set.

    Requires n >= 5 and f neither constant nor the identity. With
    ``best_effort`` smaller n is attempted and None returned when no route
    applies.
    """
    n = f.n
    if f.is_constant() or f.is_identity():
        raise PreconditionError("f must be neither constant nor the identity")
    if n < 5 and not best_effort:
        raise PreconditionError("complete_witness needs n >= 5 (use best_effort for smaller n)")

    attempts = [
        lambda: witness_from_fixed_points(f) if len(f.fixed_points()) >= 2 * n else None,
        lambda: witness_from_limit_cycles(f)
        if len(cycle_decomposition(f).long_cycles) >= n else None,
        lambda: _from_large_independent_set(f),
    ]
    for attempt in attempts:
        try:
            res = attempt()
        except (PreconditionError, InvariantViolation):
            if not best_effort or n >= 5:
                raise
            res = None
        if res is not None:
            return res
    if best_effort:
        return None
    raise InvariantViolation("no route applies for n >= 5")


def _from_large_independent_set(f: Network) -> WitnessResult | None:
    A = large_independent_set(f)
    if len(A) < 2 * f.n:
        return None
    return witness_from_independent_set(f, A)
