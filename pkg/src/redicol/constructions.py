"""Explicit extremal and frozen constructions, each with a certificate of
re-verified claims."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .colouring import Dicolouring, blocked_vertices, is_dicolouring, is_frozen_colouring
from .degeneracy import Mode, degeneracy, dichromatic_number, max_average_degree
from .digraph import (Digraph, Graph, bidirect, girth, is_oriented,
                      transitive_tournament)


@dataclass
class Claim:
    name: str
    value: str
    checked: bool = True


@dataclass
class ConstructionResult:
    name: str
    colouring: Dicolouring
    digraph: Digraph | None = None
    graph: Graph | None = None
    claims: list[Claim] = field(default_factory=list)
    labels: list[str] | None = None

    @property
    def D(self) -> Digraph:
        """The digraph, or the bidirected graph for undirected results."""
        return self.digraph if self.digraph is not None else bidirect(self.graph)

    def claim(self, name: str, value, checked: bool = True) -> None:
        if isinstance(value, bool):
            value = str(value).lower()
        self.claims.append(Claim(name, str(value), checked))

    def get(self, name: str) -> str:
        for c in self.claims:
            if c.name == name:
                return c.value
        raise KeyError(name)

    def certificate_lines(self) -> list[str]:
        lines = [f"construction={self.name}"]
        for c in self.claims:
            lines.append(f"{c.name}={c.value}" + ("" if c.checked else " (unchecked)"))
        return lines


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _certify_frozen(res: ConstructionResult) -> None:
    D = res.D
    res.claim("dicolouring", is_dicolouring(D, res.colouring))
    res.claim("frozen", is_frozen_colouring(D, res.colouring))


# ---------------------------------------------------------------------------
# 4-regular oriented graph with a frozen 2-dicolouring

FIG1_LABELS = list("abcdefgh")


def frozen_4regular() -> ConstructionResult:
    """8-vertex 2-diregular oriented graph with a frozen 2-dicolouring.

    Outer cycle a..d, inner cycle e..h, and two rounds of spokes.  Colour 1 is
    {b, d, f, h}, colour 2 is {a, c, e, g}.
    """
    a, b, c, d, e, f, g, h = range(8)
    arcs = [(a, b), (b, c), (c, d), (d, a),
            (e, f), (f, g), (g, h), (h, e),
            (f, a), (g, b), (h, c), (e, d),
            (a, e), (b, f), (c, g), (d, h)]
    D = Digraph(8, arcs)
    col = Dicolouring((2, 1, 2, 1, 2, 1, 2, 1), 2)
    res = ConstructionResult("fig1", col, digraph=D, labels=FIG1_LABELS)
    res.claim("n", D.n)
    res.claim("m", D.m)
    res.claim("oriented", is_oriented(D))
    res.claim("diregular_2", all(D.out_degree(v) == 2 == D.in_degree(v) for v in range(8)))
    _certify_frozen(res)
    return res


# ---------------------------------------------------------------------------
# F_n and F_n^k


def _pair_pattern(n: int, P: Sequence[int], Q: Sequence[int]) -> list[tuple[int, int]]:
    """Arcs between the colour-j path P and the colour-l path Q (j < l)."""
    arcs = [(P[i], Q[i]) for i in range(n)]
    arcs += [(Q[i + 1], P[i]) for i in range(n - 1)]
    arcs += [(Q[0], P[1]), (P[n - 1], Q[0]), (Q[n - 2], P[n - 1])]
    return arcs


def freezable_k(n: int, k: int) -> ConstructionResult:
    """k directed paths of n vertices, the two-path pattern on every pair.

    Vertex ``j*n + i`` is the i-th vertex of path j (0-based); path j gets
    colour j+1.  For n = 2 the pattern degenerates: one arc repeats (kept
    once) and a digon appears, so the certificate reports oriented=false.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 2:
        raise ValueError("n must be at least 2")
    paths = [[j * n + i for i in range(n)] for j in range(k)]
    arcs = [(p[i], p[i + 1]) for p in paths for i in range(n - 1)]
    for j, l in combinations(range(k), 2):
        arcs += _pair_pattern(n, paths[j], paths[l])
    D = Digraph(k * n, list(dict.fromkeys(arcs)))
    col = Dicolouring(tuple(j + 1 for j in range(k) for _ in range(n)), k)
    res = ConstructionResult(f"fpath-k n={n} k={k}", col, digraph=D)
    res.claim("n", D.n)
    res.claim("m", D.m)
    res.claim("oriented", is_oriented(D))
    res.claim("arc_formula", D.m == k * D.n + k * (k - 2))
    _certify_frozen(res)
    return res


def freezable_path_pair(n: int) -> ConstructionResult:
    """The two-path oriented graph: u_i = i, v_i = n + i; u's coloured 1, v's 2."""
    res = freezable_k(n, 2)
    res.name = f"fpath n={n}"
    rep = max_average_degree(res.D)
    res.claim("arcs_twice_vertices", res.D.m == 2 * res.D.n)
    res.claim("mad", _frac(rep.mad))
    return res


# ---------------------------------------------------------------------------
# B_k and G_k


def _tower_arcs(k: int) -> tuple[int, list[tuple[int, int]], list[int]]:
    if k == 0:
        return 1, [], [1]
    m, sub, xi = _tower_arcs(k - 1)
    arcs = []
    off1, off2 = 1, 1 + m
    arcs += [(u + off1, v + off1) for u, v in sub]
    arcs += [(u + off2, v + off2) for u, v in sub]
    arcs += [(0, off1 + i) for i in range(m)]
    arcs += [(off1 + i, off2 + j) for i in range(m) for j in range(m)]
    arcs += [(off2 + i, 0) for i in range(m)]
    return 1 + 2 * m, arcs, [k + 1] + xi + xi


def tower(k: int) -> tuple[Digraph, Dicolouring]:
    """B_k with its natural (k+1)-dicolouring (root gets k+1, copies recursive)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n, arcs, xi = _tower_arcs(k)
    return Digraph(n, arcs), Dicolouring(tuple(xi), k + 1)


def out_degenerate_tower(k: int, chi_limit_n: int = 15) -> ConstructionResult:
    D, xi = tower(k)
    res = ConstructionResult(f"btower k={k}", xi, digraph=D)
    res.claim("n", D.n)
    res.claim("m", D.m)
    res.claim("n_formula", D.n == 2 ** (k + 1) - 1)
    res.claim("oriented", is_oriented(D))
    res.claim("out_degeneracy", degeneracy(D, Mode.OUT).value)
    res.claim("dicolouring", is_dicolouring(D, xi))
    if D.n <= chi_limit_n:
        res.claim("dichromatic", dichromatic_number(D, k + 1))
    else:
        res.claim("dichromatic", k + 1, checked=False)
    return res


def non_mixing_tower(k: int, explore: bool = True) -> ConstructionResult:
    """TT_{k+1} plus, for each arc xy, a B_k copy entered from y and leaving to x."""
    if k < 1:
        raise ValueError("k must be at least 1")
    T = transitive_tournament(k + 1)
    B, xi = tower(k)
    arcs = list(T.arcs)
    colours = [i + 1 for i in range(k + 1)]
    n = k + 1
    for x, y in T.arcs:
        off = n
        arcs += [(u + off, v + off) for u, v in B.arcs]
        arcs += [(y, off + i) for i in range(B.n)]
        arcs += [(off + i, x) for i in range(B.n)]
        colours += list(xi.colours)
        n += B.n
    D = Digraph(n, arcs)
    col = Dicolouring(tuple(colours), k + 1)
    res = ConstructionResult(f"gtower k={k}", col, digraph=D)
    res.claim("n", D.n)
    res.claim("m", D.m)
    res.claim("oriented", is_oriented(D))
    res.claim("out_degeneracy", degeneracy(D, Mode.OUT).value)
    res.claim("dicolouring", is_dicolouring(D, col))
    if explore and (k + 1) ** D.n <= 1 << 20:
        from .explorer import is_mixing

        res.claim(f"mixing_{k + 1}", is_mixing(D, k + 1))
    else:
        res.claim(f"mixing_{k + 1}", False, checked=False)
    return res


# ---------------------------------------------------------------------------
# planar freezing gadget

GADGET_RED = (0, 1, 2, 3, 4)
GADGET_BLACK = (5, 6, 7, 8, 9)
# the attached vertex a gets a -> ATTACH_IN and ATTACH_OUT -> a
ATTACH_IN, ATTACH_OUT = 1, 2


def gadget_arcs() -> list[tuple[int, int]]:
    r, b = GADGET_RED, GADGET_BLACK
    arcs = [(r[i], r[i + 1]) for i in range(4)] + [(b[i], b[i + 1]) for i in range(4)]
    arcs += [(b[i], r[i]) for i in range(5)]
    arcs += [(r[i + 1], b[i]) for i in range(4)]
    arcs += [(r[0], b[1]), (r[3], b[4]), (b[4], r[0])]
    return arcs


def planar_freeze_gadget() -> ConstructionResult:
    """Two columns of five vertices (red = 1, black = 2) where every vertex is blocked."""
    D = Digraph(10, gadget_arcs())
    col = Dicolouring((1,) * 5 + (2,) * 5, 2)
    res = ConstructionResult("planar-freeze", col, digraph=D,
                             labels=[f"r{i}" for i in range(1, 6)] + [f"b{i}" for i in range(1, 6)])
    res.claim("n", D.n)
    res.claim("m", D.m)
    res.claim("oriented", is_oriented(D))
    res.claim("all_blocked", len(blocked_vertices(D, col)) == D.n)
    res.claim("max_degree", D.max_degree())
    res.claim("planarity", "by construction", checked=False)
    return res


# ---------------------------------------------------------------------------
# regular freezable graphs by composition


def complete_bipartite(r: int) -> Graph:
    """K_{r,r} with sides 0..r-1 and r..2r-1."""
    if r < 1:
        raise ValueError("r must be positive")
    return Graph(2 * r, [(i, r + j) for i in range(r) for j in range(r)])


def _bipartition(H: Graph) -> tuple[list[int], list[int]]:
    side = [-1] * H.n
    for s in range(H.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in H.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    raise ValueError("H is not bipartite")
    return [v for v in range(H.n) if side[v] == 0], [v for v in range(H.n) if side[v] == 1]


def _perfect_matching(A: list[int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Kuhn's augmenting paths; vertices and neighbours scanned in index order."""
    match_b: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_b or augment(match_b[b], seen):
                match_b[b] = a
                return True
        return False

    for a in A:
        if not augment(a, set()):
            raise ValueError("no perfect matching: H is not regular bipartite")
    return {a: b for b, a in match_b.items()}


def regular_bipartite_edge_colouring(H: Graph, r: int) -> tuple[list[int], list[int], dict[tuple[int, int], int]]:
    """Proper r-edge-colouring of an r-regular bipartite graph by peeling
    perfect matchings.  Returns (A side, B side, colour of each edge (a, b))."""
    if not H.is_regular(r):
        raise ValueError(f"H is not {r}-regular")
    A, B = _bipartition(H)
    if len(A) != len(B):
        raise ValueError("H sides have different sizes")
    adj = {a: sorted(H.adj[a]) for a in A}
    colour: dict[tuple[int, int], int] = {}
    for i in range(1, r + 1):
        M = _perfect_matching(A, adj)
        for a, b in M.items():
            colour[(a, b)] = i
            adj[a].remove(b)
    return A, B, colour


def class_interleaving(a: Dicolouring) -> list[int]:
    """Round-robin over equal colour classes, so any k consecutive vertices
    have pairwise distinct colours."""
    classes = a.classes()
    sizes = {len(c) for c in classes}
    if len(sizes) != 1:
        raise ValueError("colour classes have different sizes")
    return [classes[c][i] for i in range(sizes.pop()) for c in range(a.k)]


def compose_freezable(G_prev: Graph, frozen: Dicolouring, H: Graph) -> ConstructionResult:
    """d-regular graph with frozen (d+1)-colouring and |V|-regular bipartite H
    -> (d+1)-regular graph with frozen (d+2)-colouring.

    Output numbering: copy of G_prev for the i-th A-side vertex occupies
    ``i*n .. i*n+n-1`` (same internal order), then the independent sets.
    """
    n, c = G_prev.n, frozen.k
    d = c - 1
    if frozen.n != n:
        raise ValueError("colouring size does not match G_prev")
    if not G_prev.is_regular(d):
        raise ValueError(f"G_prev is not {d}-regular")
    if not is_frozen_colouring(bidirect(G_prev), frozen):
        raise ValueError("the given colouring of G_prev is not frozen")
    if n % c:
        raise ValueError(f"{c} colours do not divide {n} vertices")
    order = class_interleaving(frozen)
    A, B, ecol = regular_bipartite_edge_colouring(H, n)
    blocks = n // c
    a_pos = {a: i for i, a in enumerate(A)}
    b_pos = {b: i for i, b in enumerate(B)}
    base_x = len(A) * n
    edges = []
    for i in range(len(A)):
        edges += [(i * n + u, i * n + v) for u, v in G_prev.edges]
    for (a, b), col in ecol.items():
        v = a_pos[a] * n + order[col - 1]
        x = base_x + b_pos[b] * blocks + (col - 1) // c
        edges.append((v, x))
    N = base_x + len(B) * blocks
    G = Graph(N, edges)
    colours = list(frozen.colours) * len(A) + [c + 1] * (len(B) * blocks)
    beta = Dicolouring(tuple(colours), c + 1)
    res = ConstructionResult("compose", beta, graph=G)
    res.claim("n", G.n)
    res.claim("m", G.m)
    res.claim("regular", G.is_regular(d + 1))
    res.claim("degree", d + 1)
    _certify_frozen(res)
    sizes = {len(cls) for cls in beta.classes()}
    res.claim("equal_classes", len(sizes) == 1)
    g_out, bound = girth(G), min(girth(G_prev), girth(H))
    res.claim("girth", "inf" if math.isinf(g_out) else int(g_out))
    res.claim("girth_at_least_inputs", g_out >= bound)
    res.claim("indexing", "input d-regular with frozen (d+1)-colouring -> output (d+1)-regular "
                          "with frozen (d+2)-colouring; in k-terms: (k-1)-regular k-freezable to k-regular (k+1)-freezable",
              checked=False)
    return res


def single_vertex_base() -> tuple[Graph, Dicolouring]:
    return Graph(1, []), Dicolouring((1,), 1)
