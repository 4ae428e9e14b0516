import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from bniso import Network, cycle_decomposition, interaction_graph, large_independent_set
from bniso.core import Digraph, PreconditionError, from_bits, is_independent, to_bits
from bniso.fixtures import catalog

from conftest import brute_graph, networks, rotation


def test_bit_encoding_matches_lex_example():
    assert [from_bits(s) for s in ["0000", "1000", "0100", "1100", "0010"]] == [0, 1, 2, 3, 4]
    assert to_bits(3, 4) == "1100"


def test_network_validation():
    with pytest.raises(PreconditionError):
        Network(2, [0, 1, 2])
    with pytest.raises(PreconditionError):
        Network(2, [0, 1, 2, 4])
    with pytest.raises(PreconditionError):
        Network(25, [0])


def test_identity_graph_has_only_loops():
    g = interaction_graph(Network.identity(3))
    assert g.arcs() == [(1, 1), (2, 2), (3, 3)]


def test_constant_graph_is_empty():
    assert interaction_graph(Network.constant(3)).arc_count() == 0
    assert interaction_graph(Network.constant(3, 5)).arc_count() == 0


def test_catalog_graphs():
    assert interaction_graph(catalog("f1")).arcs() == [(1, 2), (2, 1)]
    assert interaction_graph(catalog("f6")).arcs() == [(1, 1)]


@given(networks(max_n=4))
@settings(max_examples=200)
def test_interaction_graph_matches_brute_force(f):
    assert interaction_graph(f) == brute_graph(f)


def test_digraph_code_round_trip():
    for code in range(1 << 9):
        assert Digraph.from_code(3, code).code == code
    g = Digraph.from_arcs(3, [(1, 2), (3, 3)])
    assert g.has_arc(1, 2) and not g.has_arc(2, 1)
    assert g.adj.tolist() == [[0, 1, 0], [0, 0, 0], [0, 0, 1]]


def test_identity_cycles():
    dec = cycle_decomposition(Network.identity(2))
    assert dec.fixed_points == {0, 1, 2, 3} and dec.cycles == ()


def test_f2_has_two_two_cycles():
    dec = cycle_decomposition(catalog("f2"))
    assert dec.fixed_points == set()
    assert sorted(map(sorted, dec.cycles)) == [[0, 1], [2, 3]]


def _orbits(f):
    # independent orbit enumeration for permutations
    seen, out = set(), []
    for x in range(f.size):
        if x in seen:
            continue
        orb = [x]
        y = f(x)
        while y != x:
            orb.append(y)
            y = f(y)
        seen.update(orb)
        out.append(orb)
    return out


def test_rotation_cycles():
    f = rotation(5)
    orbits = _orbits(f)
    assert sorted(len(o) for o in orbits) == [1, 1] + [5] * 6
    dec = cycle_decomposition(f)
    assert dec.fixed_points == {0, 31}
    assert len(dec.cycles) == 6 and all(len(c) == 5 for c in dec.cycles)


@given(networks(max_n=5))
def test_cycles_are_closed_orbits(f):
    dec = cycle_decomposition(f)
    seen = set(dec.fixed_points)
    for cyc in dec.cycles:
        assert len(cyc) >= 2
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert f(a) == b
        assert not seen & set(cyc)
        seen |= set(cyc)
    # every periodic point is listed
    periodic = {x for x in range(f.size) if _is_periodic(f, x)}
    assert periodic == seen


def _is_periodic(f, x):
    y = f(x)
    for _ in range(f.size):
        if y == x:
            return True
        y = f(y)
    return False


def test_independent_set_of_constant():
    A = large_independent_set(Network.constant(3))
    assert A == set(range(1, 8))


def test_independent_set_of_identity_is_empty():
    assert large_independent_set(Network.identity(3)) == set()


def test_independent_set_of_f2_is_maximum():
    f = catalog("f2")
    best = max(
        len(S) for r in range(5) for S in itertools.combinations(range(4), r) if is_independent(f, S)
    )
    assert best == 2
    A = large_independent_set(f)
    assert len(A) == 2 and is_independent(f, A)


@given(networks(max_n=6))
def test_independent_set_guarantee(f):
    A = large_independent_set(f)
    dec = cycle_decomposition(f)
    assert is_independent(f, A)
    assert 2 * len(A) >= f.size - len(dec.fixed_points) - len(dec.long_cycles)
