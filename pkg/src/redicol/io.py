"""Text formats for colourings, sequences and list assignments, plus DOT export.

All colours are 1-based.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from typing import Sequence

from .colouring import Dicolouring, ListAssignment, Step
from .digraph import Digraph, GraphFormatError, Graph

# fill colours for DOT export, cycled when k is large
PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
           "#ffff33", "#a65628", "#f781bf", "#999999")


def _rows(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                yield lineno, [int(t) for t in line.split()]
            except ValueError:
                raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None


def parse_colouring(text: str, n: int, k: int) -> Dicolouring:
    """``v c`` per line, every vertex exactly once."""
    cols = [0] * n
    for lineno, row in _rows(text):
        if len(row) != 2:
            raise GraphFormatError("expected 'v c'", lineno)
        v, c = row
        if not 0 <= v < n:
            raise GraphFormatError(f"vertex {v} out of range", lineno)
        if not 1 <= c <= k:
            raise GraphFormatError(f"colour {c} outside 1..{k}", lineno)
        if cols[v]:
            raise GraphFormatError(f"vertex {v} coloured twice", lineno)
        cols[v] = c
    missing = [v for v in range(n) if not cols[v]]
    if missing:
        raise GraphFormatError(f"no colour for vertices {missing[:10]}")
    return Dicolouring(tuple(cols), k)


def serialize_colouring(a: Dicolouring) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(a.colours))


def parse_sequence(text: str) -> list[Step]:
    steps = []
    for lineno, row in _rows(text):
        if len(row) != 2:
            raise GraphFormatError("expected 'v c'", lineno)
        steps.append((row[0], row[1]))
    return steps


def serialize_sequence(steps: Sequence[Step]) -> str:
    return "".join(f"{v} {c}\n" for v, c in steps)


def parse_lists(text: str, n: int, k: int) -> ListAssignment:
    """``v c1 c2 ...`` per line; vertices without a line get the full list."""
    lists: list[tuple[int, ...] | None] = [None] * n
    for lineno, row in _rows(text):
        if len(row) < 2:
            raise GraphFormatError("expected 'v c1 c2 ...'", lineno)
        v, cs = row[0], row[1:]
        if not 0 <= v < n:
            raise GraphFormatError(f"vertex {v} out of range", lineno)
        if lists[v] is not None:
            raise GraphFormatError(f"vertex {v} listed twice", lineno)
        if any(not 1 <= c <= k for c in cs):
            raise GraphFormatError(f"colour outside 1..{k}", lineno)
        lists[v] = tuple(cs)
    full = tuple(range(1, k + 1))
    return ListAssignment(tuple(L if L is not None else full for L in lists), k)


def serialize_lists(L: ListAssignment) -> str:
    return "".join(f"{v} " + " ".join(map(str, cs)) + "\n" for v, cs in enumerate(L.lists))


def to_dot(D: Digraph | Graph, colouring: Dicolouring | None = None,
           labels: Sequence[str] | None = None, name: str = "G") -> str:
    """DOT text; vertices filled by colour class when a colouring is given."""
    directed = isinstance(D, Digraph)
    out = [f"{'digraph' if directed else 'graph'} {name} {{", "  node [style=filled];"]
    for v in range(D.n):
        attrs = [f'label="{labels[v] if labels else v}"']
        if colouring is not None:
            c = colouring[v]
            attrs.append(f'fillcolor="{PALETTE[(c - 1) % len(PALETTE)]}"')
            attrs.append(f'colour_class="{c}"')
        out.append(f"  {v} [{', '.join(attrs)}];")
    pairs = D.arcs if directed else D.edges
    sep = "->" if directed else "--"
    out += [f"  {u} {sep} {v};" for u, v in pairs]
    out.append("}")
    return "\n".join(out) + "\n"
