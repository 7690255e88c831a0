"""Constructive redicolouring sequences.

Each builder follows an inductive mixing argument: peel a low-degree vertex,
solve the rest, then replay the inner sequence and move the peeled vertex out
of the way whenever it blocks a step.  Every step is checked as it is emitted,
so a returned sequence is valid by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .colouring import (Dicolouring, Step, check_dicolouring, cycle_through,
                        validate_sequence)
from .degeneracy import Mode, degeneracy, degeneracy_ordering_graph
from .digraph import Digraph, Graph, is_acyclic, is_oriented, underlying_graph
from .explorer import BudgetExceeded

DEFAULT_STEP_BUDGET = 1_000_000


class PreconditionError(ValueError):
    """The builder's hypothesis (colour count, orientation, degree) fails."""


class BuilderAbort(RuntimeError):
    """An internal bound was violated; carries a diagnostic."""


@dataclass
class BuildReport:
    sequence: list[Step]
    counts: list[int]
    bound: int | None
    bound_name: str

    @property
    def length(self) -> int:
        return len(self.sequence)

    def certificate(self) -> dict[str, str]:
        out = {"length": str(self.length), "bound_name": self.bound_name,
               "max_recolourings": str(max(self.counts, default=0))}
        out["bound"] = "none" if self.bound is None else str(self.bound)
        if self.bound is not None:
            out["within_bound"] = str(self.length <= self.bound).lower()
        return out


def _counts(n: int, seq: Sequence[Step]) -> list[int]:
    c = [0] * n
    for v, _ in seq:
        c[v] += 1
    return c


def _check_endpoints(D: Digraph, k: int, a: Dicolouring, b: Dicolouring) -> None:
    for x in (a, b):
        if x.k != k:
            raise ValueError(f"colouring uses k={x.k}, expected {k}")
        check_dicolouring(D, x)


class _Replayer:
    """Shared state for the peel-and-replay builders.

    ``active`` is the set of vertices currently in the subdigraph; ``cur``
    holds their colours.  ``emit`` performs one checked step.
    """

    def __init__(self, D: Digraph, a: Dicolouring, budget: int):
        self.D = D
        self.a = a
        self.budget = budget
        self.active = [False] * D.n
        self.cur = list(a.colours)
        self.out: list[Step] = []
        self.total = 0

    def reset(self) -> None:
        self.cur = list(self.a.colours)
        self.out = []

    def is_active(self, w: int) -> bool:
        return self.active[w]

    def witness(self, w: int, c: int) -> list[int] | None:
        return cycle_through(self.D, self.cur, w, c, self.is_active)

    def emit(self, w: int, c: int) -> None:
        if self.cur[w] == c:
            raise BuilderAbort(f"step ({w},{c}) does not change the colour")
        cyc = self.witness(w, c)
        if cyc is not None:
            raise BuilderAbort(f"step ({w},{c}) closes monochromatic cycle {cyc}")
        self.cur[w] = c
        self.out.append((w, c))
        self.total += 1
        if self.total > self.budget:
            raise BudgetExceeded(self.total, self.budget, "recolouring steps")

    def side_neighbours(self, v: int, out_side: bool) -> list[int]:
        adj = self.D.out_adj[v] if out_side else self.D.in_adj[v]
        return [w for w in adj if self.active[w]]

    def side_degrees(self, v: int) -> tuple[int, int]:
        return (len(self.side_neighbours(v, True)), len(self.side_neighbours(v, False)))

    def colours_of(self, vs) -> set[int]:
        return {self.cur[w] for w in vs}


def _smallest_outside(k: int, avoid: set[int]) -> int:
    for c in range(1, k + 1):
        if c not in avoid:
            return c
    raise BuilderAbort(f"no colour in 1..{k} avoids {sorted(avoid)}")


# Evicts the peeled vertex v when inner step (w, c) is blocked; returns v's new colour.
Evictor = Callable[[_Replayer, int, int, int, int], int]


def _peel_and_replay(D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
                     order: Sequence[int], evict: Evictor, budget: int) -> list[Step]:
    """Build inside-out along the peeling ``order`` (order[0] is peeled first)."""
    R = _Replayer(D, a, budget)
    inner: list[Step] = []
    for pos in range(len(order) - 1, -1, -1):
        v = order[pos]
        R.active[v] = True
        R.reset()
        for i, (w, c) in enumerate(inner):
            if R.witness(w, c) is not None:
                if R.cur[v] != c:
                    raise BuilderAbort(f"step ({w},{c}) blocked without the peeled vertex {v}")
                R.emit(v, evict(R, v, w, c, i))
            R.emit(w, c)
        if R.cur[v] != b[v]:
            R.emit(v, b[v])
        inner = R.out
    return inner


def build_min_degen(D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
                    budget: int = DEFAULT_STEP_BUDGET) -> BuildReport:
    """Redicolouring sequence for ``k >= min-degeneracy + 2``.

    The blocking peeled vertex moves to the smallest colour different from the
    blocked step's colour and from every colour on its small side (out side
    when it has at most k-2 out-neighbours, in side otherwise).
    """
    _check_endpoints(D, k, a, b)
    if D.n == 0:
        return BuildReport([], [], 0, "none")
    rep = degeneracy(D, Mode.MIN)
    if k < rep.value + 2:
        raise PreconditionError(f"k={k} < min-degeneracy {rep.value} + 2")

    def evict(R: _Replayer, v: int, w: int, c: int, i: int) -> int:
        dout, _ = R.side_degrees(v)
        nb = R.side_neighbours(v, dout <= k - 2)
        return _smallest_outside(k, {c} | R.colours_of(nb))

    seq = _peel_and_replay(D, k, a, b, rep.ordering, evict, budget)
    return BuildReport(seq, _counts(D.n, seq), None, "none (exponential in general)")


def build_avg_degen(D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
                    budget: int = DEFAULT_STEP_BUDGET) -> BuildReport:
    """Redicolouring sequence for oriented ``D`` with ``k >= ceil(avg-degeneracy) + 1``."""
    if not is_oriented(D):
        raise PreconditionError("build_avg_degen needs an oriented graph")
    _check_endpoints(D, k, a, b)
    if D.n == 0:
        return BuildReport([], [], 0, "none")
    rep = degeneracy(D, Mode.AVG)
    if k < math.ceil(rep.value) + 1:
        raise PreconditionError(f"k={k} < ceil(avg-degeneracy {rep.value}) + 1")

    def evict(R: _Replayer, v: int, w: int, c: int, i: int) -> int:
        dout, din = R.side_degrees(v)
        out_side = dout <= din
        if min(dout, din) <= k - 2:
            return _smallest_outside(k, {c} | R.colours_of(R.side_neighbours(v, out_side)))
        # both sides have exactly k-1 neighbours; use one coloured c
        for side in (True, False):
            nb = R.side_neighbours(v, side)
            if any(R.cur[x] == c for x in nb):
                return _smallest_outside(k, R.colours_of(nb))
        raise BuilderAbort(f"vertex {v} blocks ({w},{c}) but has no neighbour coloured {c}")

    seq = _peel_and_replay(D, k, a, b, rep.ordering, evict, budget)
    return BuildReport(seq, _counts(D.n, seq), None, "none (exponential in general)")


def build_linear(D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
                 budget: int = DEFAULT_STEP_BUDGET) -> BuildReport:
    """Sequence of length at most ``(d+1)n`` when ``k >= 2d + 2``, d = min-degeneracy.

    The evicted colour also avoids the colours of the next d+1 planned
    recolourings of the peeled vertex's small-side neighbourhood, which keeps
    every vertex to at most d+1 recolourings.
    """
    _check_endpoints(D, k, a, b)
    if D.n == 0:
        return BuildReport([], [], 0, "(d+1)n")
    rep = degeneracy(D, Mode.MIN)
    d = int(rep.value)
    if k < 2 * d + 2:
        raise PreconditionError(f"k={k} < 2*min-degeneracy({d}) + 2")

    R = _Replayer(D, a, budget)
    inner: list[Step] = []
    order = rep.ordering
    for pos in range(len(order) - 1, -1, -1):
        u = order[pos]
        R.active[u] = True
        R.reset()
        dout, din = R.side_degrees(u)
        out_side = dout <= d
        if not out_side and din > d:
            raise BuilderAbort(f"peeled vertex {u} has more than {d} neighbours on both sides")
        nb = R.side_neighbours(u, out_side)
        nbset = set(nb)
        for i, (w, c) in enumerate(inner):
            if R.witness(w, c) is not None:
                if R.cur[u] != c:
                    raise BuilderAbort(f"step ({w},{c}) blocked without the peeled vertex {u}")
                upcoming = [cc for ww, cc in inner[i:] if ww in nbset][:d + 1]
                R.emit(u, _smallest_outside(k, R.colours_of(nb) | set(upcoming)))
            R.emit(w, c)
        if R.cur[u] != b[u]:
            R.emit(u, b[u])
        inner = R.out
        live = [x for x in order[pos:]]
        counts = _counts(D.n, inner)
        worst = max(live, key=lambda x: counts[x])
        if counts[worst] > d + 1:
            raise BuilderAbort(
                f"vertex {worst} recoloured {counts[worst]} times, above the bound {d + 1}")
    counts = _counts(D.n, inner)
    return BuildReport(inner, counts, (d + 1) * D.n, "(d+1)n")


def build_subcubic(D: Digraph, a: Dicolouring, b: Dicolouring) -> BuildReport:
    """2-dicolouring sequence of length at most ``2 * hamming(a, b)`` on a
    subcubic oriented graph."""
    if not is_oriented(D):
        raise PreconditionError("build_subcubic needs an oriented graph")
    if D.max_degree() > 3:
        raise PreconditionError("build_subcubic needs total degree at most 3")
    _check_endpoints(D, 2, a, b)
    R = _Replayer(D, a, budget=4 * D.n + 4)
    R.active = [True] * D.n
    while True:
        diff = [x for x in range(D.n) if R.cur[x] != b[x]]
        if not diff:
            break
        v = diff[0]
        old, new = R.cur[v], b[v]
        C = R.witness(v, new)
        if C is None:
            R.emit(v, new)
            continue
        i = C.index(v)
        C = C[i:] + C[:i]
        u = next((x for x in C[1:] if b[x] == old), None)
        if u is None:
            raise BuilderAbort(f"cycle {C} through {v} is monochromatic in the target")
        if R.witness(u, old) is None:
            R.emit(u, old)
            continue
        C2 = R.witness(u, old)
        j = C2.index(u)
        C2 = C2[j:] + C2[:j]
        if v not in C2:
            raise BuilderAbort(f"second cycle {C2} through {u} misses {v}")
        # the neighbour of u on C2 other than v
        h = C2[1] if C2[1] != v else C2[-1]
        for w, c in ((h, new), (u, old), (v, new), (h, old)):
            R.emit(w, c)
    seq = R.out
    return BuildReport(seq, _counts(D.n, seq), 2 * a.hamming(b), "2*hamming")


# ---------------------------------------------------------------------------
# arc partition and lifting


@dataclass(frozen=True)
class ArcPartition:
    B: tuple[tuple[int, int], ...]
    rest: tuple[tuple[int, int], ...]
    ordering: tuple[int, ...]
    n: int

    def part_b(self) -> Digraph:
        return Digraph(self.n, self.B)

    def part_rest(self) -> Digraph:
        return Digraph(self.n, self.rest)

    def graph(self) -> Graph:
        return underlying_graph(self.part_b())


def acyclic_arc_partition(D: Digraph) -> ArcPartition:
    """Split the arcs into two acyclic parts using a min-degeneracy ordering.

    Each vertex sends into B either all its arcs to later vertices (when it has
    few later out-neighbours) or all arcs it receives from later vertices.
    """
    if D.n == 0:
        return ArcPartition((), (), (), 0)
    rep = degeneracy(D, Mode.MIN)
    d = rep.value
    pos = {v: i for i, v in enumerate(rep.ordering)}
    B: set[tuple[int, int]] = set()
    for v in rep.ordering:
        later_out = [w for w in D.out_adj[v] if pos[w] > pos[v]]
        if len(later_out) <= d:
            B.update((v, w) for w in later_out)
        else:
            B.update((w, v) for w in D.in_adj[v] if pos[w] > pos[v])
    rest = tuple(x for x in D.arcs if x not in B)
    p = ArcPartition(tuple(sorted(B)), rest, rep.ordering, D.n)
    assert is_acyclic(p.part_b()), "B is not acyclic"
    assert is_acyclic(p.part_rest()), "A minus B is not acyclic"
    return p


def _check_proper_step(G: Graph, cols: list[int], v: int, c: int) -> str | None:
    for w in G.adj[v]:
        if cols[w] == c:
            return f"edge {min(v, w)}-{max(v, w)} becomes monochromatic"
    return None


def lift_proper_sequence(D: Digraph, p: ArcPartition, a: Dicolouring,
                         steps: Sequence[Step]) -> list[Step]:
    """Check that a proper-colouring sequence on the underlying graph of B is a
    redicolouring sequence of D, and return it unchanged."""
    from .colouring import SequenceError

    G = p.graph()
    cols = list(a.colours)
    for u, v in G.edges:
        if cols[u] == cols[v]:
            raise ValueError(f"initial colouring is not proper on edge {u}-{v}")
    for i, (v, c) in enumerate(steps, start=1):
        if cols[v] == c or not 1 <= c <= a.k:
            raise SequenceError(i, f"bad step ({v},{c})")
        why = _check_proper_step(G, cols, v, c)
        if why:
            raise SequenceError(i, why)
        cols[v] = c
    validate_sequence(D, a, steps)
    return list(steps)


def proper_colouring_greedy(G: Graph, k: int) -> list[int] | None:
    """Greedy proper colouring along a reversed degeneracy ordering."""
    cols = [0] * G.n
    for v in reversed(degeneracy_ordering_graph(G)):
        used = {cols[w] for w in G.adj[v]}
        c = next((c for c in range(1, k + 1) if c not in used), None)
        if c is None:
            return None
        cols[v] = c
    return cols


def bfs_path(D: Digraph, k: int, a: Dicolouring, b: Dicolouring, **kw) -> BuildReport:
    from .explorer import shortest_path

    seq = shortest_path(D, k, a, b, **kw)
    if seq is None:
        raise ValueError("unreachable")
    return BuildReport(seq, _counts(D.n, seq), len(seq), "shortest")


METHODS = ("bfs", "min-degen", "avg-degen", "linear", "subcubic", "auto")


def build(method: str, D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
          budget: int = DEFAULT_STEP_BUDGET, state_budget: int | None = None) -> tuple[str, BuildReport]:
    """Dispatch by method name; ``auto`` tries the strongest applicable builder first."""
    if method == "bfs":
        kw = {} if state_budget is None else {"budget": state_budget}
        return "bfs", bfs_path(D, k, a, b, **kw)
    if method == "min-degen":
        return method, build_min_degen(D, k, a, b, budget)
    if method == "avg-degen":
        return method, build_avg_degen(D, k, a, b, budget)
    if method == "linear":
        return method, build_linear(D, k, a, b, budget)
    if method == "subcubic":
        if k != 2:
            raise PreconditionError("subcubic builder works with k = 2")
        return method, build_subcubic(D, a, b)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    candidates = [("subcubic", lambda: build_subcubic(D, a, b) if k == 2 else None),
                  ("linear", lambda: build_linear(D, k, a, b, budget)),
                  ("avg-degen", lambda: build_avg_degen(D, k, a, b, budget)),
                  ("min-degen", lambda: build_min_degen(D, k, a, b, budget))]
    for name, fn in candidates:
        try:
            rep = fn()
        except PreconditionError:
            continue
        if rep is not None:
            return name, rep
    return build("bfs", D, k, a, b, budget, state_budget)
