"""Digraph and graph value types plus the structural predicates used everywhere else.

Vertices are the integers ``0..n-1``.  Both types are immutable; adjacency
lists are sorted ascending so every iteration order is deterministic.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

INFINITY = math.inf


class GraphFormatError(ValueError):
    """Raised for malformed graph input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Digraph:
    """A simple digraph: no self-loops, no duplicate arcs (digons are allowed)."""

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "out_mask", "in_mask", "_arcset")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError(f"negative vertex count {n}")
        seen: set[tuple[int, int]] = set()
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self._arcset = frozenset(seen)
        self.out_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in out_adj)
        self.in_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in in_adj)
        self.out_mask = tuple(sum(1 << w for w in a) for a in self.out_adj)
        self.in_mask = tuple(sum(1 << w for w in a) for a in self.in_adj)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcset

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def degree(self, v: int) -> int:
        return len(self.out_adj[v]) + len(self.in_adj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


class Graph:
    """A simple undirected graph; edges are stored as ``(u, v)`` with ``u < v``."""

    __slots__ = ("n", "edges", "adj", "_edgeset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError(f"negative vertex count {n}")
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self._edgeset = frozenset(seen)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edgeset

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_regular(self, d: int | None = None) -> bool:
        degs = {len(a) for a in self.adj}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# parsing / serialization


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_pairs(text: str, kind: str) -> tuple[int, list[tuple[int, int, int]]]:
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError(f"empty {kind} file: missing 'n m' header") from None
    parts = header.split()
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise GraphFormatError(f"malformed header {header!r}, expected 'n m'", lineno)
    n, m = int(parts[0]), int(parts[1])
    if n < 0 or m < 0:
        raise GraphFormatError("negative header values", lineno)
    pairs = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise GraphFormatError(f"malformed {kind} line {line!r}", lineno)
        pairs.append((int(parts[0]), int(parts[1]), lineno))
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} {kind}s but {len(pairs)} found")
    return n, pairs


def parse_digraph(text: str) -> Digraph:
    """Parse the ``n m`` + ``u v`` arc-list format; errors carry the line number."""
    n, pairs = _parse_pairs(text, "arc")
    seen: set[tuple[int, int]] = set()
    for u, v, lineno in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range in arc ({u}, {v})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
    return Digraph(n, seen)


def parse_graph(text: str) -> Graph:
    n, pairs = _parse_pairs(text, "edge")
    seen: set[tuple[int, int]] = set()
    for u, v, lineno in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range in edge ({u}, {v})", lineno)
        if u >= v:
            raise GraphFormatError(f"edge ({u}, {v}) must satisfy u < v", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
    return Graph(n, seen)


def serialize_digraph(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"] + [f"{u} {v}" for u, v in D.arcs]
    return "\n".join(lines) + "\n"


def serialize_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural predicates


def is_acyclic(D: Digraph) -> bool:
    """Kahn's algorithm: repeatedly strip sources."""
    indeg = [len(a) for a in D.in_adj]
    queue = deque(v for v in range(D.n) if indeg[v] == 0)
    removed = 0
    while queue:
        v = queue.popleft()
        removed += 1
        for w in D.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed == D.n


def topological_order(D: Digraph) -> list[int] | None:
    indeg = [len(a) for a in D.in_adj]
    ready = sorted(v for v in range(D.n) if indeg[v] == 0)
    order: list[int] = []
    queue = deque(ready)
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in D.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == D.n else None


def mask_is_acyclic(D: Digraph, mask: int) -> bool:
    """Whether the subdigraph induced by the vertex bitmask ``mask`` is acyclic."""
    in_mask = D.in_mask
    changed = True
    while mask and changed:
        changed = False
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if not (in_mask[v] & mask):
                mask ^= low
                changed = True
    return mask == 0


def digons(D: Digraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in D.arcs if u < v and D.has_arc(v, u)]


def is_oriented(D: Digraph) -> bool:
    return not digons(D)


def digirth(D: Digraph) -> float:
    """Length of a shortest directed cycle, ``INFINITY`` for acyclic digraphs."""
    best = INFINITY
    for s in range(D.n):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if dist[u] + 1 >= best:
                break
            for w in D.out_adj[u]:
                if w == s:
                    best = min(best, dist[u] + 1)
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
    return best if best == INFINITY else int(best)


def girth(G: Graph) -> float:
    best = INFINITY
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best if best == INFINITY else int(best)


def underlying_graph(D: Digraph) -> Graph:
    return Graph(D.n, {(min(u, v), max(u, v)) for u, v in D.arcs})


def bidirect(G: Graph) -> Digraph:
    return Digraph(G.n, [a for u, v in G.edges for a in ((u, v), (v, u))])


def is_bidirected(D: Digraph) -> bool:
    return all(D.has_arc(v, u) for u, v in D.arcs)


def induced_subdigraph(D: Digraph, S: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subdigraph induced by ``S``, renumbered ``0..|S|-1``.

    Returns the digraph and the remap table ``old[i]`` giving the original
    index of new vertex ``i``.
    """
    old = sorted(set(S))
    for v in old:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} out of range for n={D.n}")
    new = {v: i for i, v in enumerate(old)}
    arcs = [(new[u], new[v]) for u, v in D.arcs if u in new and v in new]
    return Digraph(len(old), arcs), old


def reverse(D: Digraph) -> Digraph:
    return Digraph(D.n, [(v, u) for u, v in D.arcs])


def disjoint_union(*parts: Digraph) -> tuple[Digraph, list[int]]:
    """Disjoint union; returns the digraph and the offset of each part."""
    offsets, arcs, n = [], [], 0
    for P in parts:
        offsets.append(n)
        arcs.extend((u + n, v + n) for u, v in P.arcs)
        n += P.n
    return Digraph(n, arcs), offsets


# small named digraphs used by tests, docs and the CLI


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def edgeless(n: int) -> Digraph:
    return Digraph(n, [])


def degree_sequence(D: Digraph) -> Sequence[tuple[int, int]]:
    return [(len(D.out_adj[v]), len(D.in_adj[v])) for v in range(D.n)]
