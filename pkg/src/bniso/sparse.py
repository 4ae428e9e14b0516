"""Networks with dense conjugates only, and hypercube isoperimetry checks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np

from .conjugate import Perm, conjugate
from .core import (
    Network,
    PreconditionError,
    _check_n,
    interaction_graph,
)
from .rng import substream

TOL = 1e-9


@dataclass(frozen=True)
class CubeSubset:
    n: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        _check_n(self.n)
        members = frozenset(int(x) for x in self.members)
        if any(not 0 <= x < 1 << self.n for x in members):
            raise PreconditionError("members must lie in [0, 2^n)")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def mask(self) -> np.ndarray:
        m = np.zeros(1 << self.n, dtype=bool)
        m[list(self.members)] = True
        return m


def build_fA(n: int, A: CubeSubset | Iterable[int]) -> Network:
    """Network sending every member of A to 0 and fixing everything else."""
    if not isinstance(A, CubeSubset):
        A = CubeSubset(n, frozenset(A))
    if 0 not in A:
        raise PreconditionError("0 must belong to A")
    table = np.arange(1 << n)
    table[A.mask()] = 0
    return Network(n, table)


def boundary_batch(masks: np.ndarray, n: int) -> np.ndarray:
    """Edge boundary for each row of a boolean (B, 2^n) membership array."""
    masks = np.asarray(masks, dtype=bool)
    B = masks.shape[0]
    total = np.zeros(B, dtype=np.int64)
    for j in range(n):
        b = 1 << j
        v = masks.reshape(B, -1, 2, b)
        total += (v[:, :, 0, :] ^ v[:, :, 1, :]).reshape(B, -1).sum(axis=1)
    return total


def boundary(X: CubeSubset) -> int:
    return int(boundary_batch(X.mask()[None, :], X.n)[0])


def lex_prefix(n: int, k: int) -> CubeSubset:
    """First k configurations in lexicographic order, i.e. {0, ..., k-1}."""
    if not 0 <= k <= 1 << n:
        raise PreconditionError(f"k={k} outside [0, 2^{n}]")
    return CubeSubset(n, frozenset(range(k)))


def lex_boundaries(n: int) -> np.ndarray:
    """∂(L_k) for k = 0..2^n.

    Adding x to L_x = {0..x-1} gains n cut edges and closes one for every
    set bit of x, since x - e_i < x exactly when bit i is set.
    """
    x = np.arange(1 << n)
    pc = np.zeros_like(x)
    for b in range(n):
        pc += (x >> b) & 1
    return np.concatenate([[0], np.cumsum(n - 2 * pc)])


def harper_check(X: CubeSubset) -> tuple[int, int, float]:
    if not len(X):
        raise PreconditionError("X must be non-empty")
    b = boundary(X)
    lex = int(lex_boundaries(X.n)[len(X)])
    cor = len(X) * (X.n - math.log2(len(X)))
    assert b >= lex, f"Harper inequality fails: {b} < {lex}"
    assert lex >= cor - TOL, f"log bound fails: {lex} < {cor}"
    return b, lex, cor


def avg_degree_check(A: CubeSubset) -> tuple[float, bool]:
    if not len(A):
        raise PreconditionError("A must be non-empty")
    d = (A.n * len(A) - boundary(A)) / len(A)
    return d, len(A) >= 2 ** d - TOL


def sample_A(n: int, size: int, rng: np.random.Generator) -> CubeSubset:
    """Uniform subset of the given size containing 0."""
    rest = rng.choice(np.arange(1, 1 << n), size=size - 1, replace=False)
    return CubeSubset(n, frozenset([0, *rest.tolist()]))


def translate(h: Network, z: int) -> Network:
    """h'(x) = h(x + z) + z."""
    idx = np.arange(h.size) ^ z
    return Network(h.n, h.table[idx] ^ z)


@dataclass
class SparseReport:
    n: int
    trials: int
    violations: int
    min_arcs: int
    bound: float
    translation_mismatches: int = 0
    outside_arc_failures: int = 0
    special_case: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ("n", "trials", "violations", "min_arcs", "bound")}


def _in_out_arcs_present(g, A: CubeSubset) -> bool:
    """Every j outside I (components used by A) has an arc to every i in I."""
    used = 0
    for a in A.members:
        used |= a
    inside = [i + 1 for i in range(A.n) if used >> i & 1]
    outside = [j + 1 for j in range(A.n) if not used >> j & 1]
    return all(g.has_arc(j, i) for i in inside for j in outside)


def verify_sparse_family(
    n: int, trials: int, seed: int, conjugations: int = 20
) -> SparseReport:
    """Check the n²/9 arc bound on f^A and random conjugates of it.

    For n <= 9 the identity network already meets the bound and is
    reported as such without sampling.
    """
    bound = n * n / 9
    if n < 9:
        return SparseReport(n, 0, int(n < bound), n, bound, special_case=True)
    size = math.ceil(2 ** (n / 4))
    rep = SparseReport(n, trials, 0, n * n, bound)
    for t in range(trials):
        rng = substream(seed, "sparse", n, t)
        A = sample_A(n, size, rng)
        f = build_fA(n, A)
        g = interaction_graph(f)
        if not _in_out_arcs_present(g, A):
            rep.outside_arc_failures += 1
        nets = [f] + [conjugate(f, Perm.random(n, rng)) for _ in range(conjugations)]
        for h in nets:
            gh = interaction_graph(h)
            arcs = gh.arc_count()
            rep.min_arcs = min(rep.min_arcs, arcs)
            if arcs < bound:
                rep.violations += 1
            z = int(rng.integers(1 << n))
            if interaction_graph(translate(h, z)) != gh:
                rep.translation_mismatches += 1
    rep.violations += rep.translation_mismatches + rep.outside_arc_failures
    return rep
