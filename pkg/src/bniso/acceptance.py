"""Seeded verification runs, one function per acceptance criterion.

Every criterion returns a ``CriterionResult``; failures carry a reproducer
(network table, seed, parameters) in ``detail``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import enumeration, nice_sets, sparse, witness
from .core import (
    Digraph,
    InvariantViolation,
    Network,
    PreconditionError,
    cycle_decomposition,
    interaction_graph,
    is_independent,
    large_independent_set,
)
from .conjugate import conjugate
from .rng import random_network_table, substream

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.number}: {self.name} "
                f"({self.seconds:.1f}s / budget {self.budget:.0f}s)")

    def to_dict(self) -> dict[str, Any]:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "seconds": round(self.seconds, 3), "budget": self.budget,
                "detail": self.detail}


def _timed(number: int, name: str, budget: float, body: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except (InvariantViolation, PreconditionError, AssertionError) as exc:
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t0
    if dt > budget:
        detail["over_budget"] = True
    return CriterionResult(number, name, ok and dt <= budget, dt, budget, detail)


def _nontrivial(n: int, rng: np.random.Generator) -> Network:
    while True:
        f = Network(n, random_network_table(n, rng))
        if not (f.is_constant() or f.is_identity()):
            return f


# -- 1 ----------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    def body():
        rep = enumeration.catalog_n2()
        return rep.ok, rep.to_dict()
    return _timed(1, "two-component catalog", 1.0, body)


# -- 2 ----------------------------------------------------------------------


def criterion_2(seed: int = DEFAULT_SEED, count: int = 500) -> CriterionResult:
    def body():
        routes: dict[str, int] = {}
        failures = []
        for t in range(count):
            rng = substream(seed, "crit2", t)
            n = int(rng.integers(5, 9))
            f = _nontrivial(n, rng)
            try:
                res = witness.complete_witness(f)
                ok = interaction_graph(res.h).arc_count() == n * n and conjugate(f, res.pi) == res.h
            except (InvariantViolation, PreconditionError) as exc:
                ok, res = False, None
                failures.append({"trial": t, "table": list(f.values), "error": str(exc)})
            if ok:
                routes[res.route.value] = routes.get(res.route.value, 0) + 1
            elif res is not None:
                failures.append({"trial": t, "table": list(f.values)})
        return not failures, {"seed": seed, "count": count, "routes": routes, "failures": failures[:5]}
    return _timed(2, "complete witness on random networks, n=5..8", 30.0, body)


# -- 3 ----------------------------------------------------------------------


def fixed_point_instance(n: int, rng: np.random.Generator) -> Network:
    size = 1 << n
    m = int(rng.integers(2 * n, size))
    fixed = set(rng.choice(size, m, replace=False).tolist())
    table = np.arange(size)
    for x in range(size):
        if x not in fixed:
            y = int(rng.integers(size - 1))
            table[x] = y if y < x else y + 1
    return Network(n, table)


def cycle_instance(n: int, rng: np.random.Generator) -> Network:
    size = 1 << n
    order = rng.permutation(size).tolist()
    table = rng.integers(0, size, size)
    count = int(rng.integers(n, 2 * n + 1))
    pos = 0
    planted = 0
    while planted < count:
        length = int(rng.integers(3, 6))
        if pos + length > size:
            break
        cyc = order[pos:pos + length]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            table[a] = b
        pos += length
        planted += 1
    return Network(n, table)


def independent_instance(n: int, rng: np.random.Generator) -> tuple[Network, set[int]]:
    """Random network with an independent set of size >= 2n, when one exists.

    Half the draws collapse a random block onto a single point and hand
    that block over as the independent set, which exercises the
    single-image cases; the rest use the generic construction.
    """
    size = 1 << n
    table = rng.integers(0, size, size)
    if rng.random() < 0.5:
        a = int(rng.integers(size))
        block = rng.choice(size, int(rng.integers(2 * n + 1, size // 2 + 1)), replace=False)
        block = block[block != a]
        table[block] = a
        mode = rng.integers(3)
        if mode == 0:
            table[a] = a
        elif mode == 1:
            outside = np.setdiff1d(np.arange(size), block)
            table[outside] = outside
        f = Network(n, table)
        A = set(block.tolist())
        if not f.is_constant() and is_independent(f, A):
            return f, A
        return independent_instance(n, rng)
    f = Network(n, table)
    if f.is_constant():
        return independent_instance(n, rng)
    return f, large_independent_set(f)


def criterion_3(seed: int = DEFAULT_SEED, per_route: int = 100) -> CriterionResult:
    def body():
        detail: dict[str, Any] = {"seed": seed}
        ok = True
        routes = {
            "fixed_points": (lambda n, r: (fixed_point_instance(n, r), None),
                             lambda f, A: len(f.fixed_points()) >= 2 * f.n,
                             lambda f, A: witness.witness_from_fixed_points(f)),
            "limit_cycles": (lambda n, r: (cycle_instance(n, r), None),
                             lambda f, A: len(cycle_decomposition(f).long_cycles) >= f.n,
                             lambda f, A: witness.witness_from_limit_cycles(f)),
            "independent_set": (independent_instance,
                                lambda f, A: len(A) >= 2 * f.n,
                                witness.witness_from_independent_set),
        }
        for name, (gen, pre, build) in routes.items():
            done, fails, tags = 0, [], {}
            t = 0
            while done < per_route:
                rng = substream(seed, f"crit3-{name}", t)
                t += 1
                n = int(rng.integers(5, 9))
                f, A = gen(n, rng)
                if not pre(f, A):
                    continue
                done += 1
                try:
                    res = build(f, A)
                    if not interaction_graph(res.h).is_complete():
                        raise InvariantViolation("not complete")
                    tags[res.route.value] = tags.get(res.route.value, 0) + 1
                except (InvariantViolation, PreconditionError) as exc:
                    fails.append({"table": list(f.values), "error": str(exc)})
            detail[name] = {"instances": done, "failures": fails[:3], "routes": tags}
            ok &= not fails
        return ok, detail
    return _timed(3, "route-specific witnesses, 100 each", 30.0, body)


# -- 4 ----------------------------------------------------------------------


def random_composition(total: int, parts: int, rng: np.random.Generator) -> list[int]:
    cuts = np.sort(rng.choice(np.arange(1, total), parts - 1, replace=False))
    return np.diff(np.concatenate([[0], cuts, [total]])).tolist()


def criterion_4(seed: int = DEFAULT_SEED, per_k: int = 20) -> CriterionResult:
    def body():
        fails = []
        checked = 0
        for n in range(5, 9):
            for k in range(1, n + 1):
                for t in range(per_k):
                    rng = substream(seed, "crit4", n, k, t)
                    sizes = random_composition(n + k, 2 * k, rng)
                    try:
                        X = witness.build_X_sets(n, k, sizes)
                        witness._check_X_sets(n, k, sizes, X)
                    except (InvariantViolation, PreconditionError) as exc:
                        fails.append({"n": n, "k": k, "sizes": sizes, "error": str(exc)})
                    checked += 1
        return not fails, {"seed": seed, "checked": checked, "failures": fails[:5]}
    return _timed(4, "disjoint covering X sets", 5.0, body)


# -- 5 ----------------------------------------------------------------------


def _parities_even(f: Network, A) -> bool:
    """Recount both parities directly, without going through is_nice."""
    inA = np.zeros(f.size, dtype=bool)
    inA[list(A)] = True
    hits = inA[f.table]
    return int(hits.sum()) % 2 == 0 and int((hits & inA).sum()) % 2 == 0


def _check_parity(f: Network, A) -> None:
    claimed = nice_sets.is_nice(f, A) is not None
    if claimed != _parities_even(f, A):
        raise InvariantViolation(f"is_nice says {claimed} on a set whose recount disagrees")


def criterion_5(seed: int = DEFAULT_SEED, per_n: int = 200, descent_per_n: int = 20) -> CriterionResult:
    def body():
        fails = []
        roundtrips = 0
        for n in range(5, 9):
            for t in range(per_n):
                rng = substream(seed, "crit5", n, t)
                f = Network(n, random_network_table(n, rng))
                i, j = (int(c) for c in rng.choice(np.arange(1, n + 1), 2, replace=False))
                try:
                    B = rng.choice(f.size, 2 * int(rng.integers(1, f.size // 2 + 1)), replace=False)
                    _check_parity(f, B.tolist())
                    rep = nice_sets.find_nice_set(f, 1 << (n - 2))
                    if not _parities_even(f, rep.A) or len(rep.A) != 1 << (n - 1):
                        raise InvariantViolation("parity check failed")
                    _check_parity(f, rep.A)
                    _, h = nice_sets.missing_arc_network(f, rep, i, j)
                    if interaction_graph(h).has_arc(j, i):
                        raise InvariantViolation("arc present")
                    back = nice_sets.nice_from_missing_arc(h, i, j)
                    if not _parities_even(h, back.A):
                        raise InvariantViolation("round trip not nice")
                    roundtrips += 1
                except (InvariantViolation, PreconditionError) as exc:
                    fails.append({"n": n, "i": i, "j": j, "table": list(f.values), "error": str(exc)})
        descents = 0
        for n in range(4, 9):
            for t in range(descent_per_n):
                rng = substream(seed, "crit5-descent", n, t)
                f = Network(n, random_network_table(n, rng))
                try:
                    seen = set()
                    for rep in nice_sets.nice_descent(f, 8):
                        if not _parities_even(f, rep.A) or len(rep.A) != 2 * rep.k:
                            raise InvariantViolation(f"k={rep.k} set not nice")
                        seen.add(rep.k)
                    if seen != set(range(8, (1 << (n - 1)) + 1)):
                        raise InvariantViolation("descent skipped some k")
                    descents += 1
                except (InvariantViolation, PreconditionError) as exc:
                    fails.append({"n": n, "table": list(f.values), "error": str(exc)})
        return not fails, {"seed": seed, "roundtrips": roundtrips, "descents": descents,
                           "failures": fails[:5]}
    return _timed(5, "nice sets and missing-arc round trips", 60.0, body)


# -- 6 and 9 share one n=3 sample -------------------------------------------


_N3_CACHE: dict[tuple[int, int], enumeration.UniquenessReport] = {}


def _n3_sample(seed: int, count: int) -> enumeration.UniquenessReport:
    key = (seed, count)
    if key not in _N3_CACHE:
        _N3_CACHE[key] = enumeration.uniqueness_check(3, ("sample", count, seed))
    return _N3_CACHE[key]


def criterion_6(seed: int = DEFAULT_SEED, count: int = 10_000) -> CriterionResult:
    def body():
        t0 = time.perf_counter()
        n2_bad = []
        for code in range(256):
            table = [(code >> (2 * x)) & 3 for x in range(4)]
            fam = enumeration.all_graphs(Network(2, table))
            if fam.graphs == {Digraph.complete(2)}:
                n2_bad.append(table)
        n2_time = time.perf_counter() - t0
        rep = _n3_sample(seed, count)
        detail = {"n2_networks": 256, "n2_only_complete": n2_bad, "n2_seconds": round(n2_time, 3),
                  "n3_tested": rep.tested, "n3_only_complete": rep.only_complete[:5], "seed": seed}
        return not n2_bad and not rep.only_complete and n2_time < 1.0, detail
    return _timed(6, "no network has only the complete graph, n=2,3", 600.0, body)


def criterion_9(seed: int = DEFAULT_SEED, count: int = 10_000) -> CriterionResult:
    def body():
        rep = _n3_sample(seed, count)
        detail = {"seed": seed, "tested": rep.tested,
                  "single_graph": rep.single_graph[:5], "missing_complete": rep.missing_complete[:5]}
        return rep.tested == count and not rep.single_graph and not rep.missing_complete, detail
    return _timed(9, "K_3 in family and at least two graphs, n=3 sample", 600.0, body)


# -- 7 ----------------------------------------------------------------------


def criterion_7(seed: int = DEFAULT_SEED, trials: int = 100, conjugations: int = 20) -> CriterionResult:
    def body():
        reports = {}
        ok = True
        for n in range(9, 15):
            rep = sparse.verify_sparse_family(n, trials, seed, conjugations)
            reports[n] = {**rep.to_dict(), "translation_mismatches": rep.translation_mismatches,
                          "outside_arc_failures": rep.outside_arc_failures}
            ok &= rep.violations == 0 and rep.min_arcs >= rep.bound
        return ok, {"seed": seed, "reports": reports}
    return _timed(7, "sparse family arc lower bound, n=9..14", 120.0, body)


# -- 8 ----------------------------------------------------------------------


def _isoperimetry_batch(masks: np.ndarray, n: int) -> dict[str, int]:
    k = masks.sum(axis=1)
    b = sparse.boundary_batch(masks, n)
    lex = sparse.lex_boundaries(n)[k]
    cor = k * (n - np.log2(k))
    d = (n * k - b) / k
    return {
        "harper": int((b < lex).sum()),
        "log_bound": int((b < cor - sparse.TOL).sum()),
        "avg_degree": int((k < 2.0 ** d - sparse.TOL).sum()),
    }


def criterion_8(seed: int = DEFAULT_SEED, samples: int = 100_000) -> CriterionResult:
    def body():
        n = 4
        codes = np.arange(1, 1 << 16)
        masks = ((codes[:, None] >> np.arange(16)) & 1).astype(bool)
        detail: dict[str, Any] = {"seed": seed, "exhaustive_n4": _isoperimetry_batch(masks, n)}
        detail["exhaustive_n4"]["subsets"] = int(masks.shape[0])
        ok = not any(v for key, v in detail["exhaustive_n4"].items() if key != "subsets")
        for n in range(5, 11):
            size = 1 << n
            agg = {"harper": 0, "log_bound": 0, "avg_degree": 0}
            chunk = 10_000
            for c in range(0, samples, chunk):
                rng = substream(seed, "crit8", n, c // chunk)
                B = min(chunk, samples - c)
                p = 2.0 ** (-rng.random(B) * n)
                masks = rng.random((B, size)) < p[:, None]
                empty = ~masks.any(axis=1)
                masks[empty, rng.integers(size, size=int(empty.sum()))] = True
                for key, v in _isoperimetry_batch(masks, n).items():
                    agg[key] += v
            detail[f"random_n{n}"] = agg
            ok &= not any(agg.values())
        return ok, detail
    return _timed(8, "hypercube isoperimetry", 120.0, body)


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def run(numbers=None, seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    results = []
    for num in numbers or sorted(CRITERIA):
        fn = CRITERIA[num]
        results.append(fn() if num == 1 else fn(seed=seed))
    return results


def full_sweep_n3(progress: Callable[[int], None] | None = None,
                  workers: int = 1) -> enumeration.UniquenessReport:
    """All 2^24 three-component networks; hours of CPU, opt-in only."""
    return enumeration.uniqueness_check(3, "exhaustive", progress=progress, workers=workers)
