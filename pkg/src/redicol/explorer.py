"""Exhaustive exploration of the k-dicolouring graph at desk scale.

States are integer codes ``sum((colour(v) - 1) * k**i)`` over the *free*
vertices (all vertices unless a list assignment pins some of them).  Validity
of every code is precomputed into a boolean table, after which a neighbour is
legal exactly when its code is valid, so the BFS is a sequence of vectorised
numpy passes over the frontier.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .colouring import Dicolouring, ListAssignment, Step, check_dicolouring, respects_lists
from .digraph import Digraph

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 26
DEFAULT_DIAMETER_BUDGET = 1 << 24
_CHUNK = 1 << 20


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "states"):
        super().__init__(f"{what}: {required} required, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass
class ComponentInfo:
    size: int
    representative: Dicolouring
    frozen: bool
    diameter: int | None = None


@dataclass
class ComponentSummary:
    total: int
    components: list[ComponentInfo] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.components)


class StateSpace:
    """The k-dicolourings of ``D`` (optionally restricted by ``lists``), as codes."""

    def __init__(self, D: Digraph, k: int, lists: ListAssignment | None = None,
                 budget: int = DEFAULT_BUDGET, threads: int = 1):
        if k < 1:
            raise ValueError("k must be at least 1")
        if lists is not None and (len(lists) != D.n or lists.k > k):
            raise ValueError("list assignment does not match the digraph / k")
        self.D, self.k, self.lists, self.threads = D, k, lists, max(1, threads)
        if lists is None:
            self.free = list(range(D.n))
            self.pinned: dict[int, int] = {}
        else:
            self.free = [v for v in range(D.n) if len(lists[v]) > 1]
            self.pinned = {v: lists[v][0] for v in range(D.n) if len(lists[v]) == 1}
        self.f = len(self.free)
        self.size = k ** self.f
        if self.size > budget:
            raise BudgetExceeded(self.size, budget)
        self.pow = np.array([k ** i for i in range(self.f)], dtype=np.int64)
        self._valid: np.ndarray | None = None

    # -- encoding ----------------------------------------------------------

    def encode(self, a: Dicolouring | Sequence[int]) -> int:
        cols = a.colours if isinstance(a, Dicolouring) else tuple(a)
        for v, c in self.pinned.items():
            if cols[v] != c:
                raise ValueError(f"vertex {v} is pinned to colour {c}")
        return sum((cols[v] - 1) * self.k ** i for i, v in enumerate(self.free))

    def decode(self, code: int) -> Dicolouring:
        cols = [0] * self.D.n
        for v, c in self.pinned.items():
            cols[v] = c
        code = int(code)
        for v in self.free:
            cols[v] = code % self.k + 1
            code //= self.k
        return Dicolouring(tuple(cols), self.k)

    def digits(self, codes: np.ndarray, i: int) -> np.ndarray:
        return (codes // self.pow[i]) % self.k

    # -- validity table ----------------------------------------------------

    def _condensed(self) -> tuple[list[list[int]], list[set[int]]] | None:
        """Per colour c: arcs between free vertices through pinned c-vertices.

        Returns (in-masks over free indices, per colour) and the set of free
        indices that can never take colour c, or None when the pinned vertices
        alone already contain a monochromatic cycle.
        """
        D, k = self.D, self.k
        idx = {v: i for i, v in enumerate(self.free)}
        in_masks = [[0] * self.f for _ in range(k)]
        forbidden: list[set[int]] = [set() for _ in range(k)]
        for c in range(1, k + 1):
            pinned_c = {v for v, col in self.pinned.items() if col == c}
            # a cycle inside pinned vertices kills every state
            for p in pinned_c:
                if self._reaches(p, p, pinned_c):
                    return None
            for u in self.free:
                seen: set[int] = set()
                queue = deque(D.out_adj[u])
                while queue:
                    w = queue.popleft()
                    if w in seen:
                        continue
                    seen.add(w)
                    if w in idx:
                        if w == u:
                            forbidden[c - 1].add(idx[u])
                        else:
                            in_masks[c - 1][idx[w]] |= 1 << idx[u]
                    elif w in pinned_c:
                        queue.extend(D.out_adj[w])
        return in_masks, forbidden

    def _reaches(self, src: int, dst: int, inside: set[int]) -> bool:
        seen: set[int] = set()
        stack = [w for w in self.D.out_adj[src] if w in inside]
        while stack:
            w = stack.pop()
            if w == dst:
                return True
            if w in seen:
                continue
            seen.add(w)
            stack.extend(x for x in self.D.out_adj[w] if x in inside)
        return False

    def _acyclic_table(self, in_masks: list[int]) -> np.ndarray:
        """acyclic[mask] over all 2**f subsets of free vertices (source peeling)."""
        f = self.f
        masks = np.arange(1 << f, dtype=np.int64)
        cur = masks.copy()
        inm = np.array(in_masks, dtype=np.int64)
        while True:
            nxt = cur.copy()
            for i in range(f):
                bit = np.int64(1 << i)
                removable = ((cur & bit) != 0) & ((cur & inm[i]) == 0)
                nxt[removable] &= ~bit
            if np.array_equal(nxt, cur):
                break
            cur = nxt
        return cur == 0

    @property
    def valid(self) -> np.ndarray:
        if self._valid is None:
            self._valid = self._compute_valid()
        return self._valid

    def _compute_valid(self) -> np.ndarray:
        valid = np.zeros(self.size, dtype=bool)
        cond = self._condensed()
        if cond is None:
            return valid
        in_masks, forbidden = cond
        tables = [self._acyclic_table(in_masks[c]) for c in range(self.k)]
        allowed = np.ones((self.f, self.k), dtype=bool)
        for i, v in enumerate(self.free):
            if self.lists is not None:
                allowed[i] = False
                for c in self.lists[v]:
                    allowed[i, c - 1] = True
            for c in range(self.k):
                if i in forbidden[c]:
                    allowed[i, c] = False
        for start in range(0, self.size, _CHUNK):
            codes = np.arange(start, min(self.size, start + _CHUNK), dtype=np.int64)
            ok = np.ones(len(codes), dtype=bool)
            cmask = np.zeros((self.k, len(codes)), dtype=np.int64)
            for i in range(self.f):
                d = self.digits(codes, i)
                ok &= allowed[i][d]
                cmask[d, np.arange(len(codes))] |= np.int64(1 << i)
            for c in range(self.k):
                ok &= tables[c][cmask[c]]
            valid[start:start + len(codes)] = ok
        return valid

    def valid_codes(self) -> np.ndarray:
        return np.flatnonzero(self.valid).astype(np.int64)

    def is_valid(self, a: Dicolouring) -> bool:
        return bool(self.valid[self.encode(a)])

    # -- neighbourhoods ----------------------------------------------------

    def _expand_chunk(self, frontier: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        nbs, srcs = [], []
        for i in range(self.f):
            d = self.digits(frontier, i)
            for delta in range(1, self.k):
                nd = (d + delta) % self.k
                nb = frontier + (nd - d) * self.pow[i]
                keep = self.valid[nb]
                nbs.append(nb[keep])
                srcs.append(frontier[keep])
        if not nbs:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        return np.concatenate(nbs), np.concatenate(srcs)

    def expand(self, frontier: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """All (neighbour, source) pairs of valid moves out of ``frontier``."""
        if self.threads == 1 or len(frontier) < 4096:
            return self._expand_chunk(frontier)
        parts = np.array_split(frontier, self.threads)
        with ThreadPoolExecutor(self.threads) as pool:
            results = list(pool.map(self._expand_chunk, parts))
        return (np.concatenate([r[0] for r in results]),
                np.concatenate([r[1] for r in results]))

    def neighbour_counts(self, codes: np.ndarray) -> np.ndarray:
        counts = np.zeros(len(codes), dtype=np.int64)
        for i in range(self.f):
            d = self.digits(codes, i)
            for delta in range(1, self.k):
                nd = (d + delta) % self.k
                counts += self.valid[codes + (nd - d) * self.pow[i]]
        return counts

    # -- BFS ---------------------------------------------------------------

    def bfs_levels(self, start: int, visited: np.ndarray | None = None,
                   stop: int | None = None) -> list[tuple[np.ndarray, np.ndarray]]:
        """Level-synchronous BFS from ``start``.

        Each level is ``(codes, predecessors)`` with codes sorted ascending and
        each predecessor the smallest code of the previous level adjacent to it.
        Marks ``visited`` in place.  Stops early once ``stop`` is reached.
        """
        if visited is None:
            visited = np.zeros(self.size, dtype=bool)
        visited[start] = True
        level = np.array([start], dtype=np.int64)
        levels = [(level, np.array([-1], dtype=np.int64))]
        while len(level) and (stop is None or not visited[stop]):
            nb, src = self.expand(level)
            fresh = ~visited[nb]
            nb, src = nb[fresh], src[fresh]
            if not len(nb):
                break
            order = np.lexsort((src, nb))
            nb, src = nb[order], src[order]
            first = np.ones(len(nb), dtype=bool)
            first[1:] = nb[1:] != nb[:-1]
            level, preds = nb[first], src[first]
            visited[level] = True
            levels.append((level, preds))
        return levels

    def step_between(self, x: int, y: int) -> Step:
        diff = int(y) - int(x)
        for i in reversed(range(self.f)):
            p = int(self.pow[i])
            if diff % p == 0 and diff // p != 0:
                new = (int(y) // p) % self.k + 1
                return self.free[i], new
        raise ValueError("codes are not adjacent")

    def component_codes(self, start: int) -> np.ndarray:
        levels = self.bfs_levels(start)
        return np.sort(np.concatenate([lv for lv, _ in levels]))

    def eccentricity(self, start: int) -> int:
        return len(self.bfs_levels(start)) - 1


# ---------------------------------------------------------------------------
# public operations


def _space(D, k, lists=None, budget=DEFAULT_BUDGET, threads=1) -> StateSpace:
    return StateSpace(D, k, lists=lists, budget=budget, threads=threads)


def enumerate_dicolourings(D: Digraph, k: int, budget: int = DEFAULT_BUDGET,
                           lists: ListAssignment | None = None) -> int:
    """Exact number of k-dicolourings (mappings into [k], surjectivity not required)."""
    return int(_space(D, k, lists, budget).valid.sum())


def iter_dicolourings(D: Digraph, k: int, budget: int = DEFAULT_BUDGET,
                      lists: ListAssignment | None = None) -> Iterator[Dicolouring]:
    """Valid k-dicolourings in increasing state-code order."""
    sp = _space(D, k, lists, budget)
    for code in sp.valid_codes():
        yield sp.decode(code)


def components(D: Digraph, k: int, with_diameter: bool = False, budget: int = DEFAULT_BUDGET,
               diameter_budget: int = DEFAULT_DIAMETER_BUDGET, threads: int = 1,
               lists: ListAssignment | None = None) -> ComponentSummary:
    sp = _space(D, k, lists, budget, threads)
    valid = sp.valid
    visited = np.zeros(sp.size, dtype=bool)
    summary = ComponentSummary(total=int(valid.sum()))
    comps: list[np.ndarray] = []
    pending = np.flatnonzero(valid)
    pos = 0
    while pos < len(pending):
        start = int(pending[pos])
        if visited[start]:
            pos += 1
            continue
        levels = sp.bfs_levels(start, visited)
        codes = np.concatenate([lv for lv, _ in levels])
        comps.append(codes)
        summary.components.append(ComponentInfo(
            size=len(codes), representative=sp.decode(start), frozen=len(codes) == 1))
        pos += 1
    if with_diameter:
        cost = sum(len(c) ** 2 for c in comps)
        if cost > diameter_budget:
            raise BudgetExceeded(cost, diameter_budget, "diameter work")
        for info, codes in zip(summary.components, comps):
            info.diameter = max(sp.eccentricity(int(c)) for c in codes)
    log.debug("components: total=%d count=%d", summary.total, summary.count)
    return summary


def is_mixing(D: Digraph, k: int, budget: int = DEFAULT_BUDGET, threads: int = 1) -> bool:
    return components(D, k, budget=budget, threads=threads).count <= 1


def shortest_path(D: Digraph, k: int, a: Dicolouring, b: Dicolouring,
                  budget: int = DEFAULT_BUDGET, lists: ListAssignment | None = None,
                  threads: int = 1) -> list[Step] | None:
    """A shortest redicolouring sequence from ``a`` to ``b``, or ``None`` if unreachable."""
    for x in (a, b):
        check_dicolouring(D, x)
        if lists is not None and not respects_lists(x, lists):
            raise ValueError("endpoint violates the list assignment")
    sp = _space(D, k, lists, budget, threads)
    src, dst = sp.encode(a), sp.encode(b)
    if src == dst:
        return []
    levels = sp.bfs_levels(src, stop=dst)
    last_codes, _ = levels[-1]
    j = np.searchsorted(last_codes, dst)
    if j >= len(last_codes) or last_codes[j] != dst:
        return None
    path = [dst]
    cur = dst
    for depth in range(len(levels) - 1, 0, -1):
        codes, preds = levels[depth]
        cur = int(preds[np.searchsorted(codes, cur)])
        path.append(cur)
    path.reverse()
    return [sp.step_between(x, y) for x, y in zip(path, path[1:])]


def reachable(D: Digraph, k: int, a: Dicolouring, b: Dicolouring, **kw) -> bool:
    return shortest_path(D, k, a, b, **kw) is not None


def mirror_reachable(D: Digraph, a: Dicolouring, budget: int = DEFAULT_BUDGET) -> bool:
    if a.k != 2:
        raise ValueError("mirror reachability is defined for k = 2 only")
    return shortest_path(D, 2, a, a.mirror(), budget=budget) is not None


def frozen_vertices(D: Digraph, k: int, a: Dicolouring, budget: int = DEFAULT_BUDGET,
                    lists: ListAssignment | None = None) -> list[int]:
    """Vertices whose colour is constant over the whole component of ``a``."""
    check_dicolouring(D, a)
    sp = _space(D, k, lists, budget)
    codes = sp.component_codes(sp.encode(a))
    out = set(sp.pinned)
    for i, v in enumerate(sp.free):
        d = sp.digits(codes, i)
        if np.all(d == d[0]):
            out.add(v)
    return sorted(out)


def is_freezable(D: Digraph, k: int, budget: int = DEFAULT_BUDGET) -> Dicolouring | None:
    """The first (by state code) frozen k-dicolouring, or ``None``."""
    sp = _space(D, k, budget=budget)
    codes = sp.valid_codes()
    for start in range(0, len(codes), _CHUNK):
        chunk = codes[start:start + _CHUNK]
        isolated = np.flatnonzero(sp.neighbour_counts(chunk) == 0)
        if len(isolated):
            return sp.decode(int(chunk[isolated[0]]))
    return None


def frozen_colourings(D: Digraph, k: int, budget: int = DEFAULT_BUDGET) -> list[Dicolouring]:
    sp = _space(D, k, budget=budget)
    codes = sp.valid_codes()
    counts = sp.neighbour_counts(codes)
    return [sp.decode(int(c)) for c in codes[counts == 0]]
