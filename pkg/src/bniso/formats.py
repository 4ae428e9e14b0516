"""Text, JSON and DOT serialization for networks, permutations and digraphs."""

from __future__ import annotations

import json
from typing import Any

from .core import Digraph, Network, from_bits, to_bits


class ParseError(ValueError):
    pass


def parse_truth_table(text: str) -> Network:
    """Parse the ``n=<k>`` header followed by 2^n ``<x> <f(x)>`` rows.

    Rows may appear in any order. Both columns are written x_1 x_2 ... x_n.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise ParseError(f"first line must be 'n=<k>', got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise ParseError(f"bad n line: {lines[0]!r}") from None
    if not 1 <= n <= 24:
        raise ParseError(f"n={n} outside supported range [1, 24]")
    rows = lines[1:]
    if len(rows) != 1 << n:
        raise ParseError(f"expected {1 << n} rows for n={n}, got {len(rows)}")
    table: list[int | None] = [None] * (1 << n)
    for lineno, row in enumerate(rows, start=2):
        parts = row.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<x> <f(x)>', got {row!r}")
        for tok in parts:
            if len(tok) != n or any(ch not in "01" for ch in tok):
                raise ParseError(f"line {lineno}: {tok!r} is not an {n}-bit binary string")
        x, y = from_bits(parts[0]), from_bits(parts[1])
        if table[x] is not None:
            raise ParseError(f"line {lineno}: duplicate row for x={parts[0]}")
        table[x] = y
    return Network(n, table)


def format_truth_table(f: Network) -> str:
    out = [f"n={f.n}"]
    # rows sorted by their x string, as tables are usually printed
    rows = sorted((to_bits(x, f.n), to_bits(y, f.n)) for x, y in enumerate(f.values))
    out += [f"{x} {y}" for x, y in rows]
    return "\n".join(out) + "\n"


def network_to_dict(f: Network) -> dict[str, Any]:
    return {"n": f.n, "table": list(f.values)}


def network_from_dict(d: dict[str, Any]) -> Network:
    try:
        return Network(int(d["n"]), [int(v) for v in d["table"]])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed network JSON: {exc}") from None


def load_network(text: str) -> Network:
    """Accept either the JSON encoding or the truth-table text format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return network_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    return parse_truth_table(text)


def digraph_to_dict(g: Digraph) -> dict[str, Any]:
    return {"n": g.n, "arcs": [list(a) for a in sorted(g.arcs())]}


def digraph_from_dict(d: dict[str, Any]) -> Digraph:
    return Digraph.from_arcs(int(d["n"]), [tuple(a) for a in d["arcs"]])


def digraph_to_dot(g: Digraph, name: str = "G") -> str:
    out = [f"digraph {name} {{"]
    out += [f"  {v};" for v in range(1, g.n + 1)]
    out += [f"  {j} -> {i};" for j, i in sorted(g.arcs())]
    out.append("}")
    return "\n".join(out) + "\n"


def digraph_to_text(g: Digraph) -> str:
    return "".join(f"{j} -> {i}\n" for j, i in sorted(g.arcs()))


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
