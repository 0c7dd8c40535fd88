"""Poset documents: the on-disk input format, plus diagram export.

A document is a JSON object with three fields::

    {
      "name": "example",
      "elements": ["bot", "a", "b"],
      "relation": [["bot", "a"], ["bot", "b"]]
    }

``relation`` is a generating relation between element labels: users
write covers (or any generators) and the reflexive-transitive closure
is applied before the axioms are checked.  A cycle in the generators
breaks antisymmetry and is reported with the offending labels and a
connecting path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .poset import NotAntisymmetric, Poset, PosetError, bits, validate_up_rows


class ParseError(ValueError):
    pass


class RelationCycle(PosetError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        path = " <= ".join(cycle)
        super().__init__(f"generating relation creates a cycle: {path}")


@dataclass(frozen=True)
class PosetDocument:
    name: str
    elements: tuple[str, ...]
    relation: tuple[tuple[str, str], ...]

    def to_poset(self) -> Poset:
        index = {label: i for i, label in enumerate(self.elements)}
        n = len(self.elements)
        rows = [1 << i for i in range(n)]
        edges = []
        for a, b in self.relation:
            rows[index[a]] |= 1 << index[b]
            edges.append((index[a], index[b]))
        closed = kernels.transitive_closure(rows)
        try:
            return validate_up_rows(closed, self.elements)
        except NotAntisymmetric as exc:
            i, j = exc.pair
            cycle = _cycle_labels(edges, i, j, list(self.elements))
            raise RelationCycle(cycle) from exc


def _cycle_labels(edges, i: int, j: int, labels: list[str]) -> list[str]:
    """A concrete i..j..i path through the generating relation."""

    def path(src: int, dst: int) -> list[int]:
        prev = {src: src}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for a, b in edges:
                    if a == u and b not in prev:
                        prev[b] = u
                        nxt.append(b)
            frontier = nxt
        if dst not in prev:
            return [src, dst]
        out = [dst]
        while out[-1] != src:
            out.append(prev[out[-1]])
        return out[::-1]

    there = path(i, j)
    back = path(j, i)
    return [labels[k] for k in there + back[1:]]


def parse_document(text: str) -> PosetDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object")
    for key in ("name", "elements", "relation"):
        if key not in raw:
            raise ParseError(f"missing field {key!r}")
    name = raw["name"]
    elements = raw["elements"]
    relation = raw["relation"]
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError("elements must be a list of strings")
    if len(set(elements)) != len(elements):
        raise ParseError("element labels must be unique")
    pairs = []
    known = set(elements)
    if not isinstance(relation, list):
        raise ParseError("relation must be a list of pairs")
    for entry in relation:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ParseError(f"relation entries are [lower, upper] pairs, got {entry!r}")
        a, b = entry
        if a not in known or b not in known:
            raise ParseError(f"relation mentions unknown label in {entry!r}")
        pairs.append((a, b))
    return PosetDocument(name, tuple(elements), tuple(pairs))


def load_document(path: str) -> PosetDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)


def to_dot(p: Poset, node_labels: Sequence[str] | None = None) -> str:
    """Cover diagram in DOT text, bottom-up rank direction."""
    labels = list(node_labels) if node_labels else [p.label(i) for i in range(p.n)]
    lines = ["digraph poset {", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append(f'  n{i} [label="{labels[i]}"];')
    for i, j in p.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def mask_label(mask: int, base_labels: Sequence[str]) -> str:
    names = [base_labels[i] for i in bits(mask)]
    return "{" + ",".join(names) + "}"
