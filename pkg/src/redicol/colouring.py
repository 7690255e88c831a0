"""Dicolourings, single-step legality, blocked/frozen predicates, list constraints
and redicolouring-sequence validation.

Colours are ``1..k``.  A recolouring step is a pair ``(vertex, new_colour)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .digraph import Digraph

Step = tuple[int, int]


@dataclass(frozen=True)
class Dicolouring:
    """A total map vertex -> colour in ``1..k``.  Validity against a digraph is
    checked separately by :func:`is_dicolouring`."""

    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ValueError(f"colour {c} of vertex {v} outside 1..{self.k}")

    @classmethod
    def of(cls, colours: Iterable[int], k: int | None = None) -> "Dicolouring":
        colours = tuple(colours)
        return cls(colours, k if k is not None else max(colours, default=1))

    @property
    def n(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def with_colour(self, v: int, c: int) -> "Dicolouring":
        cols = list(self.colours)
        cols[v] = c
        return Dicolouring(tuple(cols), self.k)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colours):
            out[c - 1].append(v)
        return out

    def permuted(self, perm: Sequence[int]) -> "Dicolouring":
        """Apply the colour permutation ``c -> perm[c-1]``."""
        return Dicolouring(tuple(perm[c - 1] for c in self.colours), self.k)

    def mirror(self) -> "Dicolouring":
        if self.k != 2:
            raise ValueError("the mirror is only defined for 2-dicolourings")
        return Dicolouring(tuple(3 - c for c in self.colours), 2)

    def hamming(self, other: "Dicolouring") -> int:
        return sum(a != b for a, b in zip(self.colours, other.colours))


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[tuple[int, ...], ...]
    k: int

    def __post_init__(self):
        norm = tuple(tuple(sorted(set(int(c) for c in L))) for L in self.lists)
        object.__setattr__(self, "lists", norm)
        for v, L in enumerate(norm):
            if not L:
                raise ValueError(f"empty list at vertex {v}")
            if L[0] < 1 or L[-1] > self.k:
                raise ValueError(f"list of vertex {v} not inside 1..{self.k}")

    @classmethod
    def full(cls, n: int, k: int) -> "ListAssignment":
        return cls(tuple(tuple(range(1, k + 1)) for _ in range(n)), k)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def forced(self) -> list[int]:
        return [v for v, L in enumerate(self.lists) if len(L) == 1]


class InvalidColouring(ValueError):
    """A colouring (or step) that is not a dicolouring; ``cycle`` is a monochromatic witness."""

    def __init__(self, message: str, cycle: list[int] | None = None):
        super().__init__(message)
        self.cycle = cycle


class SequenceError(ValueError):
    """First failing step of a redicolouring sequence (``step`` is 1-based)."""

    def __init__(self, step: int, reason: str, cycle: list[int] | None = None):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason
        self.cycle = cycle


def _rotate_min(cycle: list[int]) -> list[int]:
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def _check_length(D: Digraph, a: Dicolouring) -> None:
    if a.n != D.n:
        raise ValueError(f"colouring has {a.n} entries but the digraph has {D.n} vertices")


def _path_within(D: Digraph, sources: Iterable[int], targets: set[int], allowed) -> list[int] | None:
    """BFS shortest path from any source to any target using only ``allowed`` vertices."""
    parent: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s in parent or not allowed(s):
            continue
        parent[s] = -1
        queue.append(s)
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in D.out_adj[u]:
            if w not in parent and allowed(w):
                parent[w] = u
                queue.append(w)
    return None


def cycle_through(D: Digraph, colours: Sequence[int], v: int, c: int, active=None) -> list[int] | None:
    """A directed cycle through ``v`` whose other vertices all have colour ``c``.

    This is exactly the obstruction to giving ``v`` colour ``c``.  ``active``
    optionally restricts the search to a vertex subset (a predicate).
    """
    def allowed(w: int) -> bool:
        return w != v and colours[w] == c and (active is None or active(w))

    targets = {w for w in D.in_adj[v] if allowed(w)}
    if not targets:
        return None
    path = _path_within(D, (w for w in D.out_adj[v] if allowed(w)), targets, allowed)
    if path is None:
        return None
    return _rotate_min([v] + path)


def monochromatic_cycle(D: Digraph, colours: Sequence[int]) -> list[int] | None:
    """Some monochromatic directed cycle, or ``None`` if the colouring is a dicolouring."""
    # DFS per colour class looking for a back arc
    n = D.n
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(D.out_adj[root]))]
        state[root] = 1
        trail = [root]
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if colours[w] != colours[u]:
                    continue
                if state[w] == 1:
                    cyc = trail[trail.index(w):]
                    return _rotate_min(list(cyc))
                if state[w] == 0:
                    state[w] = 1
                    trail.append(w)
                    stack.append((w, iter(D.out_adj[w])))
                    advanced = True
                    break
            if not advanced:
                state[u] = 2
                trail.pop()
                stack.pop()
    return None


def is_dicolouring(D: Digraph, a: Dicolouring) -> bool:
    _check_length(D, a)
    return monochromatic_cycle(D, a.colours) is None


def check_dicolouring(D: Digraph, a: Dicolouring) -> None:
    """Raise :class:`InvalidColouring` with a witness cycle if ``a`` is not a dicolouring."""
    _check_length(D, a)
    cyc = monochromatic_cycle(D, a.colours)
    if cyc is not None:
        raise InvalidColouring(f"monochromatic cycle {cyc} in colour {a[cyc[0]]}", cyc)


def recolour_witness(D: Digraph, a: Dicolouring, v: int, c: int) -> list[int] | None:
    """``None`` if recolouring ``v`` to ``c`` is legal, otherwise the blocking cycle."""
    _check_length(D, a)
    if not 0 <= v < D.n:
        raise ValueError(f"vertex {v} out of range")
    if not 1 <= c <= a.k:
        raise ValueError(f"colour {c} outside 1..{a.k}")
    if a[v] == c:
        raise ValueError(f"vertex {v} already has colour {c}: a step must change the colour")
    return cycle_through(D, a.colours, v, c)


def recolour_legal(D: Digraph, a: Dicolouring, v: int, c: int) -> bool:
    return recolour_witness(D, a, v, c) is None


def admissible_colours(D: Digraph, a: Dicolouring, v: int) -> list[int]:
    return [c for c in range(1, a.k + 1) if c == a[v] or cycle_through(D, a.colours, v, c) is None]


def blocked_vertices(D: Digraph, a: Dicolouring) -> list[int]:
    _check_length(D, a)
    return [v for v in range(D.n)
            if all(cycle_through(D, a.colours, v, c) is not None
                   for c in range(1, a.k + 1) if c != a[v])]


def is_frozen_colouring(D: Digraph, a: Dicolouring) -> bool:
    return len(blocked_vertices(D, a)) == D.n


def respects_lists(a: Dicolouring, L: ListAssignment) -> bool:
    if len(L) != a.n:
        raise ValueError("list assignment and colouring sizes differ")
    return all(c in L[v] for v, c in enumerate(a.colours))


def validate_sequence(D: Digraph, a0: Dicolouring, steps: Sequence[Step],
                      lists: ListAssignment | None = None) -> Dicolouring:
    """Apply ``steps`` from ``a0``; return the final colouring or raise
    :class:`SequenceError` at the first bad step."""
    check_dicolouring(D, a0)
    if lists is not None and not respects_lists(a0, lists):
        raise InvalidColouring("initial colouring violates the list assignment")
    cols = list(a0.colours)
    k = a0.k
    for i, (v, c) in enumerate(steps, start=1):
        if not 0 <= v < D.n:
            raise SequenceError(i, f"vertex {v} out of range")
        if not 1 <= c <= k:
            raise SequenceError(i, f"colour {c} outside 1..{k}")
        if cols[v] == c:
            raise SequenceError(i, f"vertex {v} already coloured {c}")
        if lists is not None and c not in lists[v]:
            raise SequenceError(i, f"colour {c} not in the list of vertex {v}")
        cyc = cycle_through(D, cols, v, c)
        if cyc is not None:
            raise SequenceError(i, f"recolouring {v} to {c} closes monochromatic cycle {cyc}", cyc)
        cols[v] = c
    return Dicolouring(tuple(cols), k)


def apply_steps(a: Dicolouring, steps: Iterable[Step]) -> Dicolouring:
    """Apply steps without any validity check."""
    cols = list(a.colours)
    for v, c in steps:
        cols[v] = c
    return Dicolouring(tuple(cols), a.k)


def colour_permutations(k: int):
    return permutations(range(1, k + 1))
