import json

import pytest

from bniso import Network
from bniso.core import Digraph
from bniso.fixtures import CATALOG_TEXT, catalog
from bniso.formats import (
    ParseError,
    digraph_from_dict,
    digraph_to_dict,
    digraph_to_dot,
    format_truth_table,
    load_network,
    network_from_dict,
    network_to_dict,
    parse_truth_table,
)


def test_catalog_fixtures_round_trip():
    for name, text in CATALOG_TEXT.items():
        assert format_truth_table(catalog(name)) == text, name


def test_row_order_is_free():
    f = parse_truth_table("n=2\n11 01\n00 10\n10 11\n01 00\n")
    assert f == catalog("f1")


@pytest.mark.parametrize(
    "text, msg",
    [
        ("n2\n00 00\n", "n=<k>"),
        ("n=x\n", "bad n"),
        ("n=2\n00 00\n01 00\n10 00\n", "expected 4 rows"),
        ("n=2\n00 00\n00 01\n10 00\n11 00\n", "duplicate"),
        ("n=2\n00 00\n01 02\n10 00\n11 00\n", "binary"),
        ("n=2\n00 00\n01 0\n10 00\n11 00\n", "binary"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_truth_table(text)


def test_json_network_round_trip():
    f = catalog("h3")
    d = network_to_dict(f)
    # h3 rows 00->10, 10->01, 01->11, 11->00 with x_1 in the low bit
    assert d == {"n": 2, "table": [1, 2, 3, 0]}
    assert network_from_dict(json.loads(json.dumps(d))) == f
    assert load_network(json.dumps(d)) == f


def test_digraph_json_sorted_and_round_trip():
    g = Digraph.from_arcs(3, [(3, 1), (1, 2), (1, 1)])
    d = digraph_to_dict(g)
    assert d["arcs"] == [[1, 1], [1, 2], [3, 1]]
    assert digraph_from_dict(d) == g


def test_dot_export():
    dot = digraph_to_dot(Digraph.from_arcs(2, [(2, 1), (1, 2)]))
    assert "1 -> 2;" in dot and "2 -> 1;" in dot and dot.startswith("digraph")
