"""The two-component catalog networks, as truth-table text."""

from __future__ import annotations

from functools import lru_cache

from .core import Network
from .formats import parse_truth_table

CATALOG_TEXT = {
    "f1": "n=2\n00 10\n01 00\n10 11\n11 01\n",
    "f2": "n=2\n00 10\n01 11\n10 00\n11 01\n",
    "f3": "n=2\n00 00\n01 10\n10 11\n11 01\n",
    "f4": "n=2\n00 00\n01 11\n10 10\n11 01\n",
    "f5": "n=2\n00 01\n01 11\n10 11\n11 01\n",
    "f6": "n=2\n00 00\n01 00\n10 10\n11 10\n",
    "h1": "n=2\n00 10\n01 00\n10 11\n11 01\n",
    "h2": "n=2\n00 01\n01 11\n10 00\n11 10\n",  # printed row "11 01" contradicts the formulas
    "h3": "n=2\n00 10\n01 11\n10 01\n11 00\n",
    "h4": "n=2\n00 11\n01 10\n10 00\n11 01\n",
    "h5": "n=2\n00 01\n01 10\n10 11\n11 00\n",
    "h6": "n=2\n00 11\n01 00\n10 01\n11 10\n",
    "g1": "n=2\n00 10\n01 11\n10 00\n11 01\n",
    "g2": "n=2\n00 01\n01 00\n10 11\n11 10\n",
    "g3": "n=2\n00 11\n01 10\n10 01\n11 00\n",
}


@lru_cache(maxsize=None)
def catalog_networks() -> dict[str, Network]:
    return {name: parse_truth_table(text) for name, text in CATALOG_TEXT.items()}


def catalog(name: str) -> Network:
    return catalog_networks()[name]
