"""Directed degeneracy variants, exact maximum average degree, and a small
exact dichromatic-number solver."""

from __future__ import annotations

import enum
import sys
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .digraph import Digraph, Graph


class Mode(enum.Enum):
    MIN = "min"
    OUT = "out"
    MAX = "max"
    AVG = "avg"


def _key(mode: Mode, dout: int, din: int) -> Fraction:
    if mode is Mode.MIN:
        return Fraction(min(dout, din))
    if mode is Mode.OUT:
        return Fraction(dout)
    if mode is Mode.MAX:
        return Fraction(max(dout, din))
    return Fraction(dout + din, 2)


@dataclass(frozen=True)
class DegeneracyReport:
    mode: Mode
    value: Fraction
    ordering: tuple[int, ...]
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.mode.value}={_fmt(self.value)}"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def degeneracy(D: Digraph, mode: Mode | str) -> DegeneracyReport:
    """Greedy smallest-key-first peeling, ties broken by lowest vertex index.

    Every key is monotone under vertex deletion, so the largest key seen at
    removal time is the exact degeneracy.  ``witness`` is the remaining vertex
    set at the first step attaining that maximum.
    """
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    if D.n < 1:
        raise ValueError("degeneracy needs at least one vertex")
    dout = [len(a) for a in D.out_adj]
    din = [len(a) for a in D.in_adj]
    alive = [True] * D.n
    remaining = set(range(D.n))
    ordering: list[int] = []
    best = Fraction(-1)
    witness: tuple[int, ...] = ()
    for _ in range(D.n):
        v = min(remaining, key=lambda x: (_key(mode, dout[x], din[x]), x))
        key = _key(mode, dout[v], din[v])
        if key > best:
            best = key
            witness = tuple(sorted(remaining))
        ordering.append(v)
        remaining.discard(v)
        alive[v] = False
        for w in D.out_adj[v]:
            if alive[w]:
                din[w] -= 1
        for w in D.in_adj[v]:
            if alive[w]:
                dout[w] -= 1
    return DegeneracyReport(mode, best, tuple(ordering), witness)


def all_degeneracies(D: Digraph) -> dict[Mode, DegeneracyReport]:
    return {m: degeneracy(D, m) for m in Mode}


def graph_degeneracy(G: Graph) -> int:
    """Undirected degeneracy (largest minimum degree over subgraphs)."""
    if G.n == 0:
        return 0
    deg = [len(a) for a in G.adj]
    remaining = set(range(G.n))
    best = 0
    while remaining:
        v = min(remaining, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        remaining.discard(v)
        for w in G.adj[v]:
            if w in remaining:
                deg[w] -= 1
    return best


def degeneracy_ordering_graph(G: Graph) -> list[int]:
    deg = [len(a) for a in G.adj]
    remaining = set(range(G.n))
    order = []
    while remaining:
        v = min(remaining, key=lambda x: (deg[x], x))
        order.append(v)
        remaining.discard(v)
        for w in G.adj[v]:
            if w in remaining:
                deg[w] -= 1
    return order


# ---------------------------------------------------------------------------
# maximum average degree


@dataclass(frozen=True)
class DensityReport:
    mad: Fraction
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"mad={self.mad.numerator}/{self.mad.denominator}"


class _FlowNetwork:
    """Dinic max-flow over integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if self.cap[e] > 0 and level[self.to[e]] < 0:
                    level[self.to[e]] = level[u] + 1
                    q.append(self.to[e])
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._push(s, t, level, it)
                if not pushed:
                    break
                flow += pushed

    def _push(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        # iterative DFS along the level graph; returns the bottleneck pushed
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(self.cap[e] for e in path)
                for e in path:
                    self.cap[e] -= f
                    self.cap[e ^ 1] += f
                return f
            edges = self.head[u]
            while it[u] < len(edges):
                e = edges[it[u]]
                w = self.to[e]
                if self.cap[e] > 0 and level[w] == level[u] + 1:
                    break
                it[u] += 1
            else:
                if not path:
                    return 0
                level[u] = -1  # dead end
                e = path.pop()
                u = self.to[e ^ 1]
                it[u] += 1
                continue
            e = edges[it[u]]
            path.append(e)
            u = self.to[e]

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.head[u]:
                if self.cap[e] > 0 and self.to[e] not in seen:
                    seen.add(self.to[e])
                    q.append(self.to[e])
        return seen


def _densest_closure(n: int, pairs: list[tuple[int, int]], g: Fraction) -> tuple[Fraction, set[int]]:
    """Maximise ``|pairs inside H| - g*|H|`` by a max-weight-closure min cut.

    Pair nodes have weight 1, vertex nodes weight ``-g``; scaled by the
    denominator of ``g`` so that all capacities are integers.
    """
    p, q = g.numerator, g.denominator
    m = len(pairs)
    s, t = n + m, n + m + 1
    net = _FlowNetwork(n + m + 2)
    inf = q * (m + 1) + 1
    for i, (u, v) in enumerate(pairs):
        net.add_edge(s, n + i, q)
        net.add_edge(n + i, u, inf)
        net.add_edge(n + i, v, inf)
    for v in range(n):
        net.add_edge(v, t, p)
    cut = net.max_flow(s, t)
    side = net.source_side(s)
    H = {v for v in range(n) if v in side}
    return Fraction(q * m - cut, q), H


def max_average_degree(D: Union[Digraph, Graph]) -> DensityReport:
    """Exact ``max 2|A(H)|/|V(H)|`` over non-empty induced subgraphs.

    Parametric search: start from the whole graph's density, repeatedly ask
    the min-cut oracle for a strictly denser subgraph, and move the parameter
    to that subgraph's exact density.  Stops when no denser subgraph exists.
    """
    if D.n < 1:
        raise ValueError("mad needs at least one vertex")
    pairs = list(D.arcs) if isinstance(D, Digraph) else list(D.edges)
    n = D.n
    best_set = tuple(range(n))
    best = Fraction(len(pairs), n)
    while True:
        gain, H = _densest_closure(n, pairs, best)
        if gain <= 0 or not H:
            break
        inside = sum(1 for u, v in pairs if u in H and v in H)
        density = Fraction(inside, len(H))
        if density <= best:  # pragma: no cover - guarded by gain > 0
            break
        best, best_set = density, tuple(sorted(H))
    return DensityReport(2 * best, best_set)


# ---------------------------------------------------------------------------
# dichromatic number


EXCEEDS_LIMIT = None


def _creates_cycle(D: Digraph, cls: int, v: int) -> bool:
    """Would adding ``v`` to the acyclic class bitmask ``cls`` close a cycle?"""
    out_mask = D.out_mask
    start = out_mask[v] & cls
    if not start:
        return False
    target = D.in_mask[v] & cls
    if not target:
        return False
    seen = start
    frontier = start
    while frontier:
        if frontier & target:
            return True
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= out_mask[low.bit_length() - 1]
            f ^= low
        nxt &= cls & ~seen
        seen |= nxt
        frontier = nxt
    return False


def k_dicolouring(D: Digraph, k: int) -> list[int] | None:
    """Some k-dicolouring (colours 1..k) by backtracking, or ``None``.

    Vertices are assigned in degree-descending static order (ties by index);
    a new colour may be opened only as ``max used + 1`` to break colour symmetry.
    """
    n = D.n
    if n == 0:
        return []
    if k < 1:
        return None
    order = sorted(range(n), key=lambda v: (-D.degree(v), v))
    classes = [0] * k
    colour = [0] * n

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            if _creates_cycle(D, classes[c], v):
                continue
            classes[c] |= 1 << v
            colour[v] = c + 1
            if place(i + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
        return False

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    return colour if place(0, 0) else None


def dichromatic_number(D: Digraph, limit: int) -> int | None:
    """Exact dichromatic number if it is at most ``limit``, else ``EXCEEDS_LIMIT`` (None)."""
    if D.n == 0:
        return 0
    for k in range(1, limit + 1):
        if k_dicolouring(D, k) is not None:
            return k
    return EXCEEDS_LIMIT
