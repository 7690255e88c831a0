"""Seeded random instances for tests and the ``random`` CLI command."""

from __future__ import annotations

import random
from itertools import combinations

from .colouring import Dicolouring, is_dicolouring
from .digraph import Digraph

CLASSES = ("digraph", "oriented", "subcubic")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_digraph(n: int, p: float, seed=None) -> Digraph:
    """Each of the n(n-1) possible arcs independently with probability p."""
    rng = _rng(seed)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph(n, arcs)


def random_oriented(n: int, p: float, seed=None) -> Digraph:
    """Each pair becomes an arc with probability p, direction uniform."""
    rng = _rng(seed)
    arcs = []
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


def random_subcubic(n: int, p: float, seed=None, oriented: bool = True) -> Digraph:
    """Pairs in random order; an edge is kept with probability p unless it
    would push a total degree above 3.  With ``oriented=False`` a kept edge
    becomes a digon with probability 1/4."""
    rng = _rng(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    arcs = []
    for u, v in pairs:
        if rng.random() >= p:
            continue
        digon = not oriented and rng.random() < 0.25
        need = 2 if digon else 1
        if deg[u] + need > 3 or deg[v] + need > 3:
            continue
        deg[u] += need
        deg[v] += need
        if digon:
            arcs += [(u, v), (v, u)]
        else:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, arcs)


def random_instance(kind: str, n: int, p: float, seed=None) -> Digraph:
    if kind == "digraph":
        return random_digraph(n, p, seed)
    if kind == "oriented":
        return random_oriented(n, p, seed)
    if kind == "subcubic":
        return random_subcubic(n, p, seed)
    raise ValueError(f"unknown class {kind!r}")


def random_dicolouring(D: Digraph, k: int, seed=None, tries: int = 10_000) -> Dicolouring:
    """Uniform colour draws with rejection until a dicolouring appears."""
    rng = _rng(seed)
    for _ in range(tries):
        a = Dicolouring(tuple(rng.randint(1, k) for _ in range(D.n)), k)
        if is_dicolouring(D, a):
            return a
    raise RuntimeError(f"no {k}-dicolouring found after {tries} draws")
