import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bniso import Network, interaction_graph
from bniso.conjugate import Perm, conjugate
from bniso.core import PreconditionError, from_bits
from bniso.sparse import (
    CubeSubset,
    avg_degree_check,
    boundary,
    boundary_batch,
    build_fA,
    harper_check,
    lex_boundaries,
    lex_prefix,
    sample_A,
    translate,
    verify_sparse_family,
)

from conftest import networks


def brute_boundary(n, X):
    X = set(X)
    return sum(1 for x in X for i in range(n) if x ^ (1 << i) not in X)


def cube_edges(n):
    return np.array([(x, x ^ (1 << i)) for x in range(1 << n) for i in range(n) if x < x ^ (1 << i)])


def subsets(n):
    return st.sets(st.integers(0, (1 << n) - 1), min_size=1)


def test_fA_singleton_is_identity():
    assert build_fA(5, {0}).is_identity()


def test_fA_full_cube_is_constant_zero():
    f = build_fA(4, range(16))
    assert f.is_constant() and f(7) == 0


def test_fA_requires_zero():
    with pytest.raises(PreconditionError):
        build_fA(4, {1, 2})


def test_fA_n9_example(rng):
    n = 9
    size = math.ceil(2 ** (n / 4))
    assert size == 5
    A = sample_A(n, size, rng)
    assert 0 in A and len(A) == 5
    assert interaction_graph(build_fA(n, A)).arc_count() >= 81 / 9


def test_boundary_examples():
    assert boundary(CubeSubset(5, {13})) == 5
    assert boundary(CubeSubset(4, range(16))) == 0
    assert boundary(lex_prefix(4, 5)) == 10


def test_cube_subset_range():
    with pytest.raises(PreconditionError):
        CubeSubset(3, {8})


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), subsets(n))))
def test_boundary_matches_brute(args):
    n, X = args
    assert boundary(CubeSubset(n, X)) == brute_boundary(n, X)


def test_lex_prefix_examples():
    strings = ["0000", "1000", "0100", "1100", "0010"]
    assert lex_prefix(4, 5).members == frozenset(from_bits(s) for s in strings)
    assert len(lex_prefix(4, 0)) == 0
    assert lex_prefix(4, 16).members == frozenset(range(16))
    with pytest.raises(PreconditionError):
        lex_prefix(4, 17)


def test_lex_boundaries_match_direct_count():
    for n in range(1, 9):
        lb = lex_boundaries(n)
        for k in range(1 << n):
            assert lb[k] == brute_boundary(n, range(k))


def test_lex_prefix_is_optimal_exhaustive_n3_n4():
    # the minimum boundary over all k-subsets is attained by the prefix
    for n in (3, 4):
        N = 1 << n
        codes = np.arange(1, 1 << N)
        member = (codes[:, None] >> np.arange(N)) & 1
        edges = cube_edges(n)
        cut = (member[:, edges[:, 0]] != member[:, edges[:, 1]]).sum(axis=1)
        sizes = member.sum(axis=1)
        lb = lex_boundaries(n)
        for k in range(1, N + 1):
            assert cut[sizes == k].min() == lb[k]


def test_harper_examples():
    b, lex, cor = harper_check(lex_prefix(4, 5))
    assert (b, lex) == (10, 10)
    assert cor == pytest.approx(5 * (4 - math.log2(5)))
    assert cor == pytest.approx(8.39, abs=0.005)
    with pytest.raises(PreconditionError):
        harper_check(CubeSubset(3, set()))


@pytest.mark.parametrize("n,d", [(4, 0), (4, 2), (5, 3), (6, 6)])
def test_subcube_is_equality_case(n, d):
    X = CubeSubset(n, range(1 << d))
    b, lex, cor = harper_check(X)
    assert b == lex == (1 << d) * (n - d)
    assert cor == pytest.approx(b, abs=1e-9)


@settings(max_examples=300)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), subsets(n))))
def test_harper_holds(args):
    n, X = args
    b, lex, cor = harper_check(CubeSubset(n, X))
    assert b >= lex >= cor - 1e-9


def test_lex_log_bound_direct_loop():
    for n in range(1, 17):
        lb = lex_boundaries(n)
        k = np.arange(1, (1 << n) + 1)
        assert np.all(lb[1:] >= k * (n - np.log2(k)) - 1e-9)


def test_avg_degree_examples():
    d, ok = avg_degree_check(CubeSubset(4, range(16)))
    assert d == 4 and ok
    d, ok = avg_degree_check(CubeSubset(4, {5}))
    assert d == 0 and ok
    with pytest.raises(PreconditionError):
        avg_degree_check(CubeSubset(4, set()))


@settings(max_examples=300)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), subsets(n))))
def test_avg_degree_holds(args):
    n, A = args
    d, ok = avg_degree_check(CubeSubset(n, A))
    inside = sum(1 for a in A for i in range(n) if a ^ (1 << i) in A)
    assert d == pytest.approx(inside / len(A))
    assert ok


def test_boundary_batch_agrees_row_by_row(rng):
    n = 6
    masks = rng.random((50, 64)) < 0.3
    got = boundary_batch(masks, n)
    for m, b in zip(masks, got):
        assert b == brute_boundary(n, np.flatnonzero(m).tolist())


@settings(max_examples=60, deadline=None)
@given(networks(1, 5), st.data())
def test_translation_preserves_graph(f, data):
    z = data.draw(st.integers(0, f.size - 1))
    h = translate(f, z)
    assert interaction_graph(h) == interaction_graph(f)
    assert all(h(x) == f(x ^ z) ^ z for x in range(f.size))


def test_sample_A_reproducible_and_uniform_shape():
    a = sample_A(10, 6, np.random.default_rng(3))
    b = sample_A(10, 6, np.random.default_rng(3))
    assert a == b and 0 in a and len(a) == 6


def test_arcs_from_unused_to_used_components(rng):
    # every component never used by A has an arc into every component A uses
    for _ in range(20):
        n = int(rng.integers(9, 13))
        A = sample_A(n, math.ceil(2 ** (n / 4)), rng)
        used = 0
        for a in A.members:
            used |= a
        g = interaction_graph(build_fA(n, A))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if used >> (i - 1) & 1 and not used >> (j - 1) & 1:
                    assert g.has_arc(j, i)


def test_small_n_special_case():
    rep = verify_sparse_family(6, 10, 1)
    assert rep.special_case and rep.violations == 0
    assert rep.to_dict() == {"n": 6, "trials": 0, "violations": 0, "min_arcs": 6, "bound": 4.0}


def test_sparse_family_n12_and_determinism():
    rep = verify_sparse_family(12, 5, 99, conjugations=3)
    assert rep.violations == 0 and rep.min_arcs >= 16
    assert rep.to_dict() == verify_sparse_family(12, 5, 99, conjugations=3).to_dict()


def test_sparse_family_prefix_consistent():
    # trials use fixed substreams, so a shorter run sees a subset of instances
    short = verify_sparse_family(9, 3, 5, conjugations=2)
    long = verify_sparse_family(9, 6, 5, conjugations=2)
    assert long.min_arcs <= short.min_arcs


def test_conjugates_of_fA_meet_bound(rng):
    n = 10
    A = sample_A(n, math.ceil(2 ** (n / 4)), rng)
    f = build_fA(n, A)
    for _ in range(5):
        h = conjugate(f, Perm.random(n, rng))
        assert interaction_graph(h).arc_count() >= n * n / 9
