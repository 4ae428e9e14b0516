import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bniso import Network, all_graphs, interaction_graph
from bniso.core import PreconditionError, from_bits
from bniso.fixtures import catalog
from bniso.nice_sets import (
    find_nice_set,
    is_closed_by,
    is_nice,
    missing_arc_network,
    nice_descent,
    nice_from_missing_arc,
    signature,
)
from bniso.rng import random_network_table, substream

from conftest import networks, rotation


def brute_nice(f, A):
    pre = [x for x in range(f.size) if f(x) in A]
    overlap = [x for x in pre if x in A]
    return len(pre) % 2 == 0 and len(overlap) % 2 == 0


def brute_has_nice(f, k):
    return any(brute_nice(f, set(A)) for A in itertools.combinations(range(f.size), 2 * k))


def test_full_cube_is_nice(rng):
    for n in range(1, 7):
        f = Network(n, random_network_table(n, rng))
        rep = is_nice(f, range(f.size))
        assert rep is not None and rep.k == 1 << (n - 1)


@given(st.integers(1, 5), st.data())
def test_identity_every_even_set_is_nice(n, data):
    A = data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=2, max_size=1 << n)
                  .filter(lambda s: len(s) % 2 == 0))
    assert is_nice(Network.identity(n), A) is not None


def test_f5_pair_not_nice():
    f = catalog("f5")
    A = {from_bits("00"), from_bits("01")}
    # the preimage {00, 11} is even but only 00 lands back inside A
    assert f.preimage(A) == {from_bits("00"), from_bits("11")}
    assert is_nice(f, A) is None


def test_is_nice_rejects_odd_or_empty():
    f = Network.identity(3)
    with pytest.raises(PreconditionError):
        is_nice(f, [1, 2, 3])
    with pytest.raises(PreconditionError):
        is_nice(f, [])
    with pytest.raises(PreconditionError):
        is_nice(f, [0, 8])


@settings(max_examples=200)
@given(networks(1, 4), st.data())
def test_is_nice_matches_brute(f, data):
    A = data.draw(st.sets(st.integers(0, f.size - 1), min_size=2, max_size=f.size)
                  .filter(lambda s: len(s) % 2 == 0))
    rep = is_nice(f, A)
    assert (rep is not None) == brute_nice(f, A)
    if rep is not None:
        assert rep.preimage_size == len(f.preimage(A))


def test_rotation_n5_k8():
    f = rotation(5)
    rep = find_nice_set(f, 8)
    assert len(rep.A) == 16
    assert rep.preimage_size % 2 == 0 and rep.overlap_size % 2 == 0
    assert brute_nice(f, rep.A)


def test_find_nice_set_preconditions():
    with pytest.raises(PreconditionError):
        find_nice_set(Network.identity(3), 4)
    with pytest.raises(PreconditionError):
        find_nice_set(Network.identity(5), 7)
    with pytest.raises(PreconditionError):
        find_nice_set(Network.identity(5), 17)


@settings(max_examples=30, deadline=None)
@given(networks(4, 6))
def test_descent_every_step_nice(f):
    ks = []
    for rep in nice_descent(f, 8):
        assert len(rep.A) == 2 * rep.k
        assert brute_nice(f, rep.A)
        ks.append(rep.k)
    assert ks == list(range(1 << (f.n - 1), 7, -1))


def test_descent_signature_matches_definition(rng):
    f = Network(5, random_network_table(5, rng))
    A = set(rng.choice(32, 20, replace=False).tolist())
    for x in A:
        s = signature(f, A, x)
        assert s.alpha == int(f(x) in A)
        assert s.beta == int(len(f.preimage({x})) % 2 == 0)
        assert s.gamma == int(len((f.preimage({x}) & A) - {x}) % 2 == 0)


def test_rotation_missing_arc_n5():
    f = rotation(5)
    rep = find_nice_set(f, 8)
    pi, h = missing_arc_network(f, rep, 1, 2)
    assert interaction_graph(h).adj[2 - 1, 1 - 1] == 0
    assert not interaction_graph(h).has_arc(2, 1)
    assert np.array_equal(h.table[pi.map], pi.map[f.table])


def test_missing_arc_preconditions():
    f = rotation(5)
    rep = find_nice_set(f, 8)
    with pytest.raises(PreconditionError):
        missing_arc_network(f, rep, 1, 1)
    with pytest.raises(PreconditionError):
        missing_arc_network(f, list(rep.A)[:14], 1, 2)


@settings(max_examples=25, deadline=None)
@given(networks(5, 7), st.data())
def test_round_trip(f, data):
    i, j = data.draw(st.lists(st.integers(1, f.n), min_size=2, max_size=2, unique=True))
    rep = find_nice_set(f, 1 << (f.n - 2))
    _, h = missing_arc_network(f, rep, i, j)
    assert not interaction_graph(h).has_arc(j, i)
    back = nice_from_missing_arc(h, i, j)
    assert brute_nice(h, back.A)


def test_identity_slab():
    n = 4
    rep = nice_from_missing_arc(Network.identity(n), 1, 2)
    assert rep.A == frozenset(x for x in range(16) if not x & 1)
    assert rep.k == 1 << (n - 2)


def test_nice_from_missing_arc_refuses_present_arc():
    with pytest.raises(PreconditionError):
        nice_from_missing_arc(rotation(4), 1, 2)


@given(st.integers(1, 5), st.data())
def test_closed_sets_have_even_size(n, data):
    i = data.draw(st.integers(1, n))
    base = data.draw(st.sets(st.integers(0, (1 << n) - 1)))
    X = base | {x ^ (1 << (i - 1)) for x in base}
    assert is_closed_by(X, i)
    assert len(X) % 2 == 0


def _some_graph_misses_arc(fam, n):
    return any(not g.has_arc(j, i) for g in fam.graphs
               for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def test_nice_iff_missing_arc_n2_exhaustive():
    for code in range(256):
        f = Network(2, [(code >> (2 * x)) & 3 for x in range(4)])
        assert brute_has_nice(f, 1) == _some_graph_misses_arc(all_graphs(f), 2), f.values


def test_nice_iff_missing_arc_n3_sampled():
    for t in range(40):
        f = Network(3, random_network_table(3, substream(7, "nice-iff", t)))
        assert brute_has_nice(f, 2) == _some_graph_misses_arc(all_graphs(f), 3), f.values


def test_missing_arc_network_inside_oracle_family_n3():
    # n = 3 is below the descent range, so take a brute-force nice set
    checked = 0
    for t in range(40):
        f = Network(3, random_network_table(3, substream(8, "nice-oracle", t)))
        A = next((set(A) for A in itertools.combinations(range(8), 4) if brute_nice(f, set(A))), None)
        if A is None:
            continue
        fam = all_graphs(f)
        for i, j in itertools.permutations(range(1, 4), 2):
            _, h = missing_arc_network(f, A, i, j)
            g = interaction_graph(h)
            assert not g.has_arc(j, i)
            assert g in fam
            checked += 1
    assert checked > 0
