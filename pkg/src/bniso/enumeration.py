"""Exact and sampled families of interaction graphs over conjugates of f."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Iterator

import numpy as np

from .core import Digraph, Network, PreconditionError, graph_codes, ones
from .fixtures import catalog_networks
from .rng import random_network_table, substream

EXHAUSTIVE_MAX_N = 3
BLOCK = 1024


@dataclass(frozen=True)
class GraphFamily:
    n: int
    graphs: frozenset[Digraph]
    source: Any = "exhaustive"  # or {"sampled": {"trials": t, "seed": s}}

    @property
    def complete_included(self) -> bool:
        return Digraph.complete(self.n) in self.graphs

    def __len__(self) -> int:
        return len(self.graphs)

    def __contains__(self, g: Digraph) -> bool:
        return g in self.graphs

    def sorted_graphs(self) -> list[Digraph]:
        return sorted(self.graphs, key=lambda g: sorted(g.arcs()))

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "source": self.source,
            "complete_included": self.complete_included,
            "graphs": [[list(a) for a in sorted(g.arcs())] for g in self.sorted_graphs()],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> GraphFamily:
        n = int(d["n"])
        graphs = frozenset(Digraph.from_arcs(n, [tuple(a) for a in arcs]) for arcs in d["graphs"])
        return cls(n, graphs, d.get("source", "exhaustive"))


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Every permutation of {0,1}^n (n <= 3) and the matching inverses."""
    size = 1 << n
    P = np.array(list(itertools.permutations(range(size))), dtype=np.int64)
    Pinv = np.empty_like(P)
    np.put_along_axis(Pinv, P, np.broadcast_to(np.arange(size), P.shape), axis=1)
    P.flags.writeable = False
    Pinv.flags.writeable = False
    return P, Pinv


@lru_cache(maxsize=None)
def _scan_order(n: int) -> np.ndarray:
    # fixed shuffle so early-exit scans meet varied conjugates quickly;
    # the identity stays first
    count = math.factorial(1 << n)
    rest = np.random.default_rng(0x5EED).permutation(np.arange(1, count))
    return np.concatenate([[0], rest])


def conjugate_batch(table: np.ndarray, P: np.ndarray, Pinv: np.ndarray) -> np.ndarray:
    """Row r holds the table of P[r] ∘ f ∘ P[r]⁻¹."""
    return np.take_along_axis(P, np.asarray(table)[Pinv], axis=1)


def _refuse(n: int, override: bool) -> None:
    if n > EXHAUSTIVE_MAX_N and not override:
        raise PreconditionError(
            f"exhaustive enumeration refused for n={n} > {EXHAUSTIVE_MAX_N}"
        )


def _perm_chunks(n: int, chunk: int = 4096) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    if n <= EXHAUSTIVE_MAX_N:
        P, Pinv = all_perms(n)
        for s in range(0, P.shape[0], chunk):
            yield P[s:s + chunk], Pinv[s:s + chunk]
        return
    it = itertools.permutations(range(1 << n))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        P = np.array(block, dtype=np.int64)
        Pinv = np.empty_like(P)
        np.put_along_axis(Pinv, P, np.broadcast_to(np.arange(1 << n), P.shape), axis=1)
        yield P, Pinv


def all_graphs(f: Network, override: bool = False) -> GraphFamily:
    """The exact set of interaction graphs over all conjugates of f."""
    _refuse(f.n, override)
    codes: set[int] = set()
    for P, Pinv in _perm_chunks(f.n):
        codes.update(np.unique(graph_codes(conjugate_batch(f.table, P, Pinv), f.n)).tolist())
    return GraphFamily(f.n, frozenset(Digraph.from_code(f.n, c) for c in codes))


def _random_perm_block(n: int, seed: int, command: str, block: int) -> np.ndarray:
    rng = substream(seed, command, block)
    size = 1 << n
    return rng.permuted(np.broadcast_to(np.arange(size), (BLOCK, size)), axis=1)


def _sampled_codes(f: Network, trials: int, seed: int, command: str) -> Iterator[np.ndarray]:
    """Graph codes of ``trials`` conjugates; trial 0 is the identity.

    Trial t draws from block t // BLOCK, so any prefix of trials is
    reproduced exactly by a shorter run with the same seed.
    """
    n, size = f.n, f.size
    ident = np.arange(size)
    for b in range(0, math.ceil(trials / BLOCK)):
        P = _random_perm_block(n, seed, command, b)[: trials - b * BLOCK].copy()
        if b == 0:
            P[0] = ident
        Pinv = np.empty_like(P)
        np.put_along_axis(Pinv, P, np.broadcast_to(ident, P.shape), axis=1)
        yield graph_codes(conjugate_batch(f.table, P, Pinv), n)


def sample_graphs(f: Network, trials: int, seed: int) -> GraphFamily:
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    codes: set[int] = set()
    for chunk in _sampled_codes(f, trials, seed, "sample"):
        codes.update(int(c) for c in np.unique(chunk))
    return GraphFamily(
        f.n,
        frozenset(Digraph.from_code(f.n, c) for c in codes),
        {"sampled": {"trials": trials, "seed": seed}},
    )


def gsize_estimate(f: Network, trials: int, seed: int) -> tuple[int, int]:
    """Distinct interaction graphs among sampled conjugates (a lower bound)."""
    fam = sample_graphs(f, trials, seed)
    return len(fam), trials


# -- early-exit scans -------------------------------------------------------


@dataclass
class ScanResult:
    complete_found: bool = False
    distinct: set[int] = field(default_factory=set)
    noncomplete_found: bool = False

    @property
    def at_least_two(self) -> bool:
        return len(self.distinct) >= 2


def scan(
    f: Network,
    stop: Callable[[ScanResult], bool],
    chunk: int = 512,
    override: bool = False,
) -> ScanResult:
    """Walk conjugates of f until ``stop`` holds or all are exhausted."""
    _refuse(f.n, override)
    full = Digraph.complete(f.n).code
    res = ScanResult()
    P, Pinv = all_perms(f.n)
    order = _scan_order(f.n)
    for s in range(0, len(order), chunk):
        idx = order[s:s + chunk]
        codes = np.unique(graph_codes(conjugate_batch(f.table, P[idx], Pinv[idx]), f.n))
        res.distinct.update(int(c) for c in codes[:3])
        res.complete_found |= bool(np.any(codes == full))
        res.noncomplete_found |= bool(np.any(codes != full))
        if stop(res):
            break
    return res


def is_not_only_complete(f: Network) -> bool:
    """True iff some conjugate of f has a non-complete interaction graph."""
    return scan(f, lambda r: r.noncomplete_found).noncomplete_found


# -- n = 2 catalog ----------------------------------------------------------


def canonical_codes(tables: np.ndarray, n: int) -> np.ndarray:
    """Isomorphism-class key: smallest conjugate table, packed into an int."""
    P, Pinv = all_perms(n)
    weights = (1 << (n * np.arange(1 << n))).astype(np.int64)
    out = np.empty(len(tables), dtype=np.int64)
    for r, t in enumerate(tables):
        H = conjugate_batch(t, P, Pinv)
        out[r] = int((H * weights).sum(axis=1).min())
    return out


def _families(tables: np.ndarray, n: int) -> list[set[int]]:
    P, Pinv = all_perms(n)
    fams = []
    for t in tables:
        fams.append(set(np.unique(graph_codes(conjugate_batch(t, P, Pinv), n)).tolist()))
    return fams


@dataclass
class CatalogReport:
    excluded: int
    counterexamples: int
    isomorphic_to_catalog: int
    iff_holds: bool
    f1_family: list[Digraph]
    f1_family_ok: bool
    f2_family: list[Digraph]
    f2_family_ok: bool
    singleton_families: int
    singleton_ok: bool
    conjugates_of_f1: int
    conjugates_of_f2: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict[str, Any]:
        return {
            "excluded_cst_id": self.excluded,
            "networks_without_K2": self.counterexamples,
            "networks_isomorphic_to_catalog": self.isomorphic_to_catalog,
            "iff_holds": self.iff_holds,
            "f1_family": [sorted(g.arcs()) for g in self.f1_family],
            "f2_family": [sorted(g.arcs()) for g in self.f2_family],
            "singleton_families": self.singleton_families,
            "conjugates_of_f1": self.conjugates_of_f1,
            "conjugates_of_f2": self.conjugates_of_f2,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def catalog_n2() -> CatalogReport:
    """Cross-check the two-component catalog against exhaustive enumeration."""
    n = 2
    cat = catalog_networks()
    tables = np.array(list(itertools.product(range(4), repeat=4)), dtype=np.int64)
    fams = _families(tables, n)
    canon = canonical_codes(tables, n)
    K2 = Digraph.complete(n).code
    loops = Digraph.from_arcs(n, [(1, 1), (2, 2)])
    ident = np.arange(4)
    is_cst = np.all(tables == tables[:, :1], axis=1)
    is_id = np.all(tables == ident, axis=1)
    excluded = is_cst | is_id

    cat_canon = set(canonical_codes(np.array([cat[f"f{i}"].table for i in range(1, 7)]), n).tolist())
    lacks_K2 = np.array([K2 not in fam for fam in fams])
    in_cat = np.array([c in cat_canon for c in canon])
    mismatches: list[str] = []
    bad = np.flatnonzero(~excluded & (lacks_K2 != in_cat))
    for r in bad:
        mismatches.append(f"table {tables[r].tolist()}: K2 missing={lacks_K2[r]}, in catalog={in_cat[r]}")

    def family_of(name: str) -> list[Digraph]:
        t = cat[name].table
        r = int(np.flatnonzero(np.all(tables == t, axis=1))[0])
        return sorted((Digraph.from_code(n, c) for c in fams[r]), key=lambda g: sorted(g.arcs()))

    f1_fam = family_of("f1")
    expected_f1 = {
        Digraph.from_arcs(n, [(1, 2), (2, 1)]),
        Digraph.from_arcs(n, [(1, 1), (2, 2), (1, 2)]),
        Digraph.from_arcs(n, [(1, 1), (2, 2), (2, 1)]),
    }
    h_graphs = {Digraph.from_code(n, int(graph_codes(cat[f"h{i}"].table[None, :], n)[0]))
                for i in range(1, 7)}
    f1_ok = set(f1_fam) == expected_f1 == h_graphs
    if not f1_ok:
        mismatches.append(f"G(f1) family {[g.arcs() for g in f1_fam]} differs from the h1..h6 graphs")
    f2_fam = family_of("f2")
    f2_ok = f2_fam == [loops]
    if not f2_ok:
        mismatches.append(f"G(f2) family is {[g.arcs() for g in f2_fam]}, expected two loops")

    def conjugates(name: str) -> set[tuple[int, ...]]:
        P, Pinv = all_perms(n)
        return {tuple(r) for r in conjugate_batch(cat[name].table, P, Pinv).tolist()}

    f1_conj, f2_conj = conjugates("f1"), conjugates("f2")
    if f1_conj != {cat[f"h{i}"].values for i in range(1, 7)}:
        mismatches.append("conjugates of f1 are not exactly h1..h6")
    if f2_conj != {cat[f"g{i}"].values for i in range(1, 4)}:
        mismatches.append("conjugates of f2 are not exactly g1..g3")

    # |family| = 1 exactly for id, the constants and the f2 class
    f2_canon = int(canonical_codes(cat["f2"].table[None, :], n)[0])
    single = np.array([len(fam) == 1 for fam in fams])
    expected_single = excluded | (canon == f2_canon)
    singleton_ok = bool(np.array_equal(single, expected_single))
    if not singleton_ok:
        mismatches.append("networks with a single interaction graph differ from id, cst, f2 class")
    if int(((canon == f2_canon) & single).sum()) != 3:
        mismatches.append("f2 class does not have 3 members with a single graph")

    return CatalogReport(
        excluded=int(excluded.sum()),
        counterexamples=int((lacks_K2 & ~excluded).sum()),
        isomorphic_to_catalog=int((in_cat & ~excluded).sum()),
        iff_holds=len(bad) == 0,
        f1_family=f1_fam,
        f1_family_ok=f1_ok,
        f2_family=f2_fam,
        f2_family_ok=f2_ok,
        singleton_families=int(single.sum()),
        singleton_ok=singleton_ok,
        conjugates_of_f1=len(f1_conj),
        conjugates_of_f2=len(f2_conj),
        mismatches=mismatches,
    )


# -- uniqueness / completeness sweeps --------------------------------------


@dataclass
class UniquenessReport:
    n: int
    mode: Any
    tested: int = 0
    skipped: int = 0
    single_graph: list[list[int]] = field(default_factory=list)
    missing_complete: list[list[int]] = field(default_factory=list)
    only_complete: list[list[int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.n == 3:
            return not (self.single_graph or self.missing_complete or self.only_complete)
        return not self.only_complete

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "mode": self.mode,
            "tested": self.tested,
            "skipped": self.skipped,
            "single_graph": self.single_graph,
            "missing_complete": self.missing_complete,
            "only_complete": self.only_complete,
        }


def _network_tables(n: int, mode: Any) -> Iterator[np.ndarray]:
    _, count, seed = mode
    for t in range(count):
        yield random_network_table(n, substream(seed, "uniqueness", n, t))


def _stop_for(n: int) -> Callable[[ScanResult], bool]:
    want_complete = n == 3

    def stop(r: ScanResult) -> bool:
        return r.at_least_two and r.noncomplete_found and (r.complete_found or not want_complete)
    return stop


def _check_tables(rep: UniquenessReport, tables: Iterable[np.ndarray],
                  progress: Callable[[int], None] | None = None, offset: int = 0) -> None:
    n = rep.n
    full = Digraph.complete(n).code
    stop = _stop_for(n)
    for idx, t in enumerate(tables, start=offset):
        if progress is not None and idx % 100000 == 0:
            progress(idx)
        f = Network(n, t)
        if f.is_constant() or f.is_identity():
            rep.skipped += 1
            continue
        rep.tested += 1
        r = scan(f, stop)
        if not r.at_least_two:
            rep.single_graph.append(list(f.values))
        if n == 3 and not r.complete_found:
            rep.missing_complete.append(list(f.values))
        if not r.noncomplete_found or r.distinct == {full}:
            rep.only_complete.append(list(f.values))


def _code_table(n: int, code: int) -> np.ndarray:
    return np.array([(code >> (n * x)) & ones(n) for x in range(1 << n)], dtype=np.int64)


def _sweep_chunk(args: tuple[int, int, int]) -> UniquenessReport:
    n, lo, hi = args
    rep = UniquenessReport(n, "exhaustive")
    _check_tables(rep, (_code_table(n, c) for c in range(lo, hi)))
    return rep


def uniqueness_check(
    n: int,
    mode: Any = "exhaustive",
    progress: Callable[[int], None] | None = None,
    skip_trivial_draws: bool = True,
    workers: int = 1,
    chunk: int = 1 << 14,
) -> UniquenessReport:
    """Scan networks for |family| >= 2, K_n membership and not-only-K_n.

    ``mode`` is "exhaustive" or ("sample", count, seed). The identity and
    constant networks are skipped. When sampling, a trivial draw is
    replaced by a fresh draw from the same substream so every sample counts.
    Exhaustive runs may be split over ``workers`` processes; chunks are
    merged in order, so the report does not depend on the worker count.
    """
    if n > EXHAUSTIVE_MAX_N:
        raise PreconditionError(f"uniqueness check supports n <= {EXHAUSTIVE_MAX_N}")
    rep = UniquenessReport(n, mode if mode == "exhaustive" else list(mode))
    if mode != "exhaustive":
        tables = _sampled_nontrivial(n, mode) if skip_trivial_draws else _network_tables(n, mode)
        _check_tables(rep, tables, progress)
        return rep
    total = (1 << n) ** (1 << n)
    jobs = [(n, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if workers <= 1 or len(jobs) == 1:
        parts = map(_sweep_chunk, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        parts = pool.map(_sweep_chunk, jobs)
    try:
        for (_, lo, _), part in zip(jobs, parts):
            if progress is not None:
                progress(lo)
            rep.tested += part.tested
            rep.skipped += part.skipped
            rep.single_graph += part.single_graph
            rep.missing_complete += part.missing_complete
            rep.only_complete += part.only_complete
    finally:
        if workers > 1 and len(jobs) > 1:
            pool.shutdown(cancel_futures=True)
    return rep


def _sampled_nontrivial(n: int, mode: Any) -> Iterator[np.ndarray]:
    _, count, seed = mode
    for t in range(count):
        rng = substream(seed, "uniqueness", n, t)
        while True:
            tab = random_network_table(n, rng)
            if not (np.all(tab == tab[0]) or np.all(tab == np.arange(1 << n))):
                break
        yield tab
