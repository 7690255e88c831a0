"""Constraint-logic instances and their compilation into list-dicolouring and
plain dicolouring path instances, with sequence translation both ways."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .colouring import (Dicolouring, ListAssignment, Step, check_dicolouring,
                        respects_lists, validate_sequence)
from .constructions import ATTACH_IN, ATTACH_OUT, GADGET_BLACK, GADGET_RED, gadget_arcs, tower
from .digraph import Digraph, Graph, GraphFormatError, digons, is_oriented
from .explorer import BudgetExceeded

Arc = tuple[int, int]

DEFAULT_NCL_BUDGET = 1 << 22


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# NCL instances


def is_proper_orientation(G: Graph, phi: Sequence[int], orient: Sequence[Arc]) -> bool:
    """True iff every vertex has in-degree at least phi(v)."""
    _check_orientation(G, orient)
    indeg = [0] * G.n
    for _, h in orient:
        indeg[h] += 1
    return all(indeg[v] >= phi[v] for v in range(G.n))


def _check_orientation(G: Graph, orient: Sequence[Arc]) -> None:
    got = sorted((min(u, v), max(u, v)) for u, v in orient)
    if got != list(G.edges):
        raise ReductionError("orientation does not match the edge set")


def normalize_orientation(G: Graph, orient: Sequence[Arc]) -> tuple[Arc, ...]:
    """Arcs listed in the order of ``G.edges``."""
    _check_orientation(G, orient)
    by_edge = {(min(u, v), max(u, v)): (u, v) for u, v in orient}
    return tuple(by_edge[e] for e in G.edges)


@dataclass(frozen=True)
class NCLInstance:
    G: Graph
    phi: tuple[int, ...]
    orientA: tuple[Arc, ...]
    orientB: tuple[Arc, ...]

    def __post_init__(self):
        G = self.G
        if len(self.phi) != G.n or any(p not in (1, 2) for p in self.phi):
            raise ReductionError("phi must give 1 or 2 for every vertex")
        for v in range(G.n):
            if G.degree(v) != 3:
                raise ReductionError(f"vertex {v} has degree {G.degree(v)}, expected 3")
        object.__setattr__(self, "orientA", normalize_orientation(G, self.orientA))
        object.__setattr__(self, "orientB", normalize_orientation(G, self.orientB))
        for name, o in (("orientA", self.orientA), ("orientB", self.orientB)):
            if not is_proper_orientation(G, self.phi, o):
                raise ReductionError(f"{name} is not proper")


def _mask_of(G: Graph, orient: Sequence[Arc]) -> int:
    """Bit e set when edge e is oriented from its larger to its smaller endpoint."""
    return sum(1 << e for e, (u, v) in enumerate(normalize_orientation(G, orient)) if u > v)


def _orient_of(G: Graph, mask: int) -> tuple[Arc, ...]:
    return tuple((v, u) if mask >> e & 1 else (u, v) for e, (u, v) in enumerate(G.edges))


def _proper_mask(G: Graph, phi: Sequence[int], mask: int) -> bool:
    indeg = [0] * G.n
    for e, (u, v) in enumerate(G.edges):
        indeg[u if mask >> e & 1 else v] += 1
    return all(indeg[v] >= phi[v] for v in range(G.n))


def ncl_reachable(inst: NCLInstance, budget: int = DEFAULT_NCL_BUDGET) -> tuple[bool, list[Arc]]:
    """BFS over proper orientations, one reversal per step.

    Returns (reachable, reversals) where each reversal is the arc ``(x, y)``
    as it was before being flipped to ``(y, x)``.
    """
    G = inst.G
    if (1 << G.m) > budget:
        raise BudgetExceeded(1 << G.m, budget, "orientations")
    src, dst = _mask_of(G, inst.orientA), _mask_of(G, inst.orientB)
    parent = {src: (-1, -1)}
    queue = deque([src])
    while queue and dst not in parent:
        cur = queue.popleft()
        for e in range(G.m):
            nxt = cur ^ (1 << e)
            if nxt not in parent and _proper_mask(G, inst.phi, nxt):
                parent[nxt] = (cur, e)
                queue.append(nxt)
    if dst not in parent:
        return False, []
    flips: list[Arc] = []
    cur = dst
    while parent[cur][0] != -1:
        prev, e = parent[cur]
        flips.append(_orient_of(G, prev)[e])
        cur = prev
    return True, flips[::-1]


def proper_orientations(G: Graph, phi: Sequence[int]) -> list[tuple[Arc, ...]]:
    return [_orient_of(G, m) for m in range(1 << G.m) if _proper_mask(G, phi, m)]


def ncl_components(G: Graph, phi: Sequence[int]) -> list[list[int]]:
    """Connected components of the proper-orientation graph, as sorted mask lists."""
    proper = {m for m in range(1 << G.m) if _proper_mask(G, phi, m)}
    seen: set[int] = set()
    comps = []
    for s in sorted(proper):
        if s in seen:
            continue
        comp, queue = [], deque([s])
        seen.add(s)
        while queue:
            cur = queue.popleft()
            comp.append(cur)
            for e in range(G.m):
                nxt = cur ^ (1 << e)
                if nxt in proper and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        comps.append(sorted(comp))
    return comps


def apply_reversals(G: Graph, phi: Sequence[int], start: Sequence[Arc],
                    flips: Sequence[Arc]) -> tuple[Arc, ...]:
    """Apply reversals, checking each is present and keeps the orientation proper."""
    arcs = set(normalize_orientation(G, start))
    for s, (x, y) in enumerate(flips, start=1):
        if (x, y) not in arcs:
            raise ReductionError(f"reversal {s}: arc {x}->{y} is not present")
        arcs.remove((x, y))
        arcs.add((y, x))
        if not is_proper_orientation(G, phi, list(arcs)):
            raise ReductionError(f"reversal {s}: orientation is no longer proper")
    return normalize_orientation(G, list(arcs))


# ---------------------------------------------------------------------------
# NCL -> 2-list dicolouring path


@dataclass
class ListPathInstance:
    D: Digraph
    L: ListAssignment
    a: Dicolouring
    b: Dicolouring
    roles: list[str] = field(default_factory=list)
    # (i, r) -> vertex of x_{i,r}; r is 1-based
    slot: dict[tuple[int, int], int] = field(default_factory=dict)
    # edge (i, j) of G -> (a_ij, slot vertex at i, slot vertex at j)
    edge_gadget: dict[tuple[int, int], tuple[int, int, int]] = field(default_factory=dict)
    planar: bool = False

    def free_vertices(self) -> list[int]:
        return [v for v in range(self.D.n) if len(self.L[v]) > 1]


def slot_index(G: Graph, i: int, j: int) -> int:
    """1-based slot of edge ij at vertex i: rank of j among i's neighbours."""
    return list(G.adj[i]).index(j) + 1


def associated_colouring(inst: NCLInstance, P: ListPathInstance, orient: Sequence[Arc]) -> Dicolouring:
    """Forced vertices to their list colour, tail slot 2, head slot 1."""
    cols = [P.L[v][0] if len(P.L[v]) == 1 else 0 for v in range(P.D.n)]
    for x, y in normalize_orientation(inst.G, orient):
        cols[P.slot[(x, slot_index(inst.G, x, y))]] = 2
        cols[P.slot[(y, slot_index(inst.G, y, x))]] = 1
    return Dicolouring(tuple(cols), 2)


def ncl_to_list_instance(inst: NCLInstance, planar: bool = False) -> ListPathInstance:
    G = inst.G
    arcs: list[Arc] = []
    lists: list[tuple[int, ...]] = []
    roles: list[str] = []
    slot: dict[tuple[int, int], int] = {}

    def new(role: str, L: tuple[int, ...]) -> int:
        roles.append(role)
        lists.append(L)
        return len(roles) - 1

    for i in range(G.n):
        x = [new(f"x[{i},{r}]", (1, 2)) for r in (1, 2, 3)]
        for r in (1, 2, 3):
            slot[(i, r)] = x[r - 1]
        if inst.phi[i] == 1:
            z = new(f"z[{i}]", (2,))
            arcs += [(z, x[0]), (x[0], x[1]), (x[1], x[2]), (x[2], z)]
        else:
            z = [new(f"z[{i},{r}]", (2,)) for r in (1, 2, 3)]
            if planar:
                arcs += [(z[0], x[0]), (x[0], x[1]), (x[1], z[0]),
                         (z[2], x[0]), (x[0], x[2]), (x[2], z[2]),
                         (z[1], x[2]), (x[2], x[1]), (x[1], z[1])]
            else:
                arcs += [(x[0], z[0]), (z[0], x[1]), (x[1], z[1]), (z[1], x[2]),
                         (x[2], z[2]), (z[2], x[0]),
                         (x[0], z[1]), (x[1], z[2]), (x[2], z[0])]
    edge_gadget = {}
    for i, j in G.edges:
        a = new(f"a[{i},{j}]", (1,))
        xi, xj = slot[(i, slot_index(G, i, j))], slot[(j, slot_index(G, j, i))]
        arcs += [(a, xi), (xi, xj), (xj, a)]
        edge_gadget[(i, j)] = (a, xi, xj)
    D = Digraph(len(roles), arcs)
    L = ListAssignment(tuple(lists), 2)
    P = ListPathInstance(D, L, Dicolouring((1,) * D.n, 2), Dicolouring((1,) * D.n, 2),
                         roles, slot, edge_gadget, planar)
    P.a = associated_colouring(inst, P, inst.orientA)
    P.b = associated_colouring(inst, P, inst.orientB)
    for x in (P.a, P.b):
        check_dicolouring(D, x)
        assert respects_lists(x, L)
    cert = degree_certificate(P)
    assert cert["forced_degree_ok"] == "true", cert
    assert cert["degree_bound_ok"] == "true", cert
    return P


def degree_certificate(P: ListPathInstance) -> dict[str, str]:
    D = P.D
    forced = [v for v in range(D.n) if len(P.L[v]) == 1]
    fmax = max((D.degree(v) for v in forced), default=0)
    out = {"n": str(D.n), "m": str(D.m), "max_degree": str(D.max_degree()),
           "max_forced_degree": str(fmax), "forced_degree_ok": str(fmax <= 3).lower()}
    if P.planar:
        io = max(max(D.out_degree(v), D.in_degree(v)) for v in range(D.n))
        out["max_in_out_degree"] = str(io)
        out["degree_bound_ok"] = str(io <= 3).lower()
        out["planarity"] = "by construction (unverified)"
    else:
        out["degree_bound_ok"] = str(D.max_degree() <= 5).lower()
    return out


# ---------------------------------------------------------------------------
# sequence translation


def translate_reorienting_to_redicolouring(inst: NCLInstance, P: ListPathInstance,
                                           flips: Sequence[Arc]) -> list[Step]:
    """Each reversal x->y becomes: head slot to 2, then tail slot to 1."""
    G = inst.G
    apply_reversals(G, inst.phi, inst.orientA, flips)
    steps: list[Step] = []
    for x, y in flips:
        steps.append((P.slot[(y, slot_index(G, y, x))], 2))
        steps.append((P.slot[(x, slot_index(G, x, y))], 1))
    validate_sequence(P.D, P.a, steps, P.L)
    return steps


def translate_redicolouring_to_reorienting(inst: NCLInstance, P: ListPathInstance,
                                           steps: Sequence[Step]) -> list[Arc]:
    """Read orientations off the slot colours; an edge whose two slots are
    both 2 keeps its previous orientation.  Constant steps are dropped."""
    G = inst.G
    validate_sequence(P.D, P.a, steps, P.L)
    owner: dict[int, tuple[int, int]] = {}
    for (i, j), (_, xi, xj) in P.edge_gadget.items():
        owner[xi] = (i, j)
        owner[xj] = (i, j)
    cols = list(P.a.colours)
    orient = {(min(u, v), max(u, v)): (u, v) for u, v in inst.orientA}
    for (i, j), (_, xi, xj) in P.edge_gadget.items():
        if cols[xi] == cols[xj]:
            raise ReductionError(f"initial colouring leaves edge {i}-{j} undetermined")
    flips: list[Arc] = []
    for s, (v, c) in enumerate(steps, start=1):
        if v not in owner:
            raise ReductionError(f"step {s} recolours non-slot vertex {v}")
        cols[v] = c
        i, j = owner[v]
        _, xi, xj = P.edge_gadget[(i, j)]
        if cols[xi] == 1 and cols[xj] == 1:
            raise ReductionError(f"step {s}: both slots of edge {i}-{j} coloured 1")
        if cols[xi] == cols[xj]:
            continue
        new = (i, j) if cols[xi] == 2 else (j, i)
        if orient[(i, j)] != new:
            flips.append(orient[(i, j)])
            orient[(i, j)] = new
            if not is_proper_orientation(G, inst.phi, list(orient.values())):
                raise ReductionError(f"step {s}: orientation is not proper")
    final = normalize_orientation(G, list(orient.values()))
    if final != inst.orientB:
        raise ReductionError("the translated sequence does not end at orientB")
    return flips


# ---------------------------------------------------------------------------
# list -> plain, digon elimination, planar freezing


@dataclass
class PlainInstance:
    D: Digraph
    a: Dicolouring
    b: Dicolouring
    gadget_vertices: list[int]
    certificate: dict[str, str] = field(default_factory=dict)

    def pinned_lists(self, k: int) -> ListAssignment:
        """Gadget vertices pinned to their colour; everything else free."""
        gv = set(self.gadget_vertices)
        return ListAssignment(tuple((self.a[v],) if v in gv else tuple(range(1, k + 1))
                                    for v in range(self.D.n)), k)


def list_to_plain(D: Digraph, L: ListAssignment, a: Dicolouring, b: Dicolouring,
                  k: int, planar: bool = False) -> PlainInstance:
    """Attach a bidirected K_k (coloured 1..k) per vertex and a digon from v to
    each of its forbidden colours."""
    if k < 2:
        raise ReductionError("k must be at least 2")
    if planar and k > 4:
        raise ReductionError("the planar variant is limited to 2 <= k <= 4")
    if L.k > k or len(L) != D.n:
        raise ReductionError("lists do not fit the digraph / k")
    for x in (a, b):
        check_dicolouring(D, x)
        if not respects_lists(x, L):
            raise ReductionError("endpoint colouring violates the lists")
    arcs = list(D.arcs)
    n = D.n
    ext: list[int] = []
    gadget: list[int] = []
    for v in range(D.n):
        z = list(range(n, n + k))
        n += k
        gadget += z
        ext += list(range(1, k + 1))
        arcs += [(p, q) for p in z for q in z if p != q]
        for c in range(1, k + 1):
            if c not in L[v]:
                arcs += [(v, z[c - 1]), (z[c - 1], v)]
    D2 = Digraph(n, arcs)
    a2 = Dicolouring(a.colours + tuple(ext), k)
    b2 = Dicolouring(b.colours + tuple(ext), k)
    bound = 2 * k + 2 if planar else 2 * k + 1
    cert = {"n": str(D2.n), "m": str(D2.m), "max_degree": str(D2.max_degree()),
            "degree_bound": str(bound), "degree_bound_ok": str(D2.max_degree() <= bound).lower()}
    if planar:
        cert["planarity"] = "by construction (unverified); forbidden colours on the outer face"
    return PlainInstance(D2, a2, b2, gadget, cert)


def eliminate_digons(D: Digraph, k: int, a: Dicolouring, b: Dicolouring) -> PlainInstance:
    """Replace every digon {u, v} (u < v) by u->v plus a copy of B_{k-1} wired
    v -> copy -> u.  Copies carry the tower's natural k-dicolouring."""
    if k < 2:
        raise ReductionError("k must be at least 2")
    for x in (a, b):
        check_dicolouring(D, x)
    H, xi = tower(k - 1)
    pairs = digons(D)
    drop = {(v, u) for u, v in pairs}
    arcs = [x for x in D.arcs if x not in drop]
    n = D.n
    gadget: list[int] = []
    for u, v in pairs:
        off = n
        arcs += [(p + off, q + off) for p, q in H.arcs]
        arcs += [(v, off + i) for i in range(H.n)]
        arcs += [(off + i, u) for i in range(H.n)]
        gadget += list(range(off, off + H.n))
        n += H.n
    D2 = Digraph(n, arcs)
    ext = tuple(xi.colours) * len(pairs)
    a2 = Dicolouring(a.colours + ext, k)
    b2 = Dicolouring(b.colours + ext, k)
    assert is_oriented(D2)
    check_dicolouring(D2, a2)
    check_dicolouring(D2, b2)
    cert = {"n": str(D2.n), "m": str(D2.m), "digons_replaced": str(len(pairs)),
            "oriented": "true"}
    return PlainInstance(D2, a2, b2, gadget, cert)


def freeze_vertex_oriented_planar(D: Digraph, v: int, colour: int) -> tuple[Digraph, list[int]]:
    """Attach a freezing gadget so that ``v`` (coloured ``colour``) can never
    take the other colour.  Returns the digraph and the gadget colours
    (new vertices ``D.n .. D.n + 9``)."""
    if not 0 <= v < D.n:
        raise ReductionError(f"vertex {v} out of range")
    if colour not in (1, 2):
        raise ReductionError("colour must be 1 or 2")
    off = D.n
    arcs = list(D.arcs) + [(p + off, q + off) for p, q in gadget_arcs()]
    arcs += [(v, off + GADGET_RED[ATTACH_IN]), (off + GADGET_RED[ATTACH_OUT], v)]
    red = 3 - colour
    cols = [0] * 10
    for r in GADGET_RED:
        cols[r] = red
    for bk in GADGET_BLACK:
        cols[bk] = colour
    return Digraph(D.n + 10, arcs), cols


def freeze_forced_vertices(P: ListPathInstance) -> PlainInstance:
    """2-colour plain instance: one freezing gadget per forced vertex."""
    if P.L.k != 2:
        raise ReductionError("gadget freezing works with two colours")
    D = P.D
    a, b = list(P.a.colours), list(P.b.colours)
    gadget: list[int] = []
    for v in P.L.forced():
        c = P.L[v][0]
        D, cols = freeze_vertex_oriented_planar(D, v, c)
        gadget += list(range(D.n - 10, D.n))
        a += cols
        b += cols
    a2, b2 = Dicolouring(tuple(a), 2), Dicolouring(tuple(b), 2)
    check_dicolouring(D, a2)
    check_dicolouring(D, b2)
    cert = {"n": str(D.n), "m": str(D.m), "max_degree": str(D.max_degree()),
            "degree_bound_ok": str(D.max_degree() <= 6).lower(),
            "oriented": str(is_oriented(D)).lower(),
            "planarity": "by construction (unverified)"}
    return PlainInstance(D, a2, b2, gadget, cert)


# ---------------------------------------------------------------------------
# NCL file format


def parse_ncl(text: str) -> NCLInstance:
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    it = iter(lines)

    def nxt(what: str) -> tuple[int, str]:
        try:
            return next(it)
        except StopIteration:
            raise GraphFormatError(f"unexpected end of file, expected {what}") from None

    def ints(i: int, s: str, count: int | None = None) -> list[int]:
        try:
            vals = [int(t) for t in s.split()]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {s!r}", i) from None
        if count is not None and len(vals) != count:
            raise GraphFormatError(f"expected {count} integers", i)
        return vals

    i, s = nxt("header")
    n, m = ints(i, s, 2)
    i, s = nxt("phi line")
    if not s.startswith("phi:"):
        raise GraphFormatError("expected 'phi:'", i)
    phi = ints(i, s[4:], n)
    edges = []
    for _ in range(m):
        i, s = nxt("edge")
        u, v = ints(i, s, 2)
        if not (0 <= u < v < n):
            raise GraphFormatError("edge must satisfy 0 <= u < v < n", i)
        edges.append((u, v))
    orients = []
    for name in ("orientA:", "orientB:"):
        i, s = nxt(name)
        if s != name:
            raise GraphFormatError(f"expected {name!r}", i)
        arcs = []
        for _ in range(m):
            i, s = nxt("arc")
            arcs.append(tuple(ints(i, s, 2)))
        orients.append(arcs)
    extra = next(it, None)
    if extra is not None:
        raise GraphFormatError("trailing data", extra[0])
    try:
        G = Graph(n, edges)
        return NCLInstance(G, tuple(phi), tuple(orients[0]), tuple(orients[1]))
    except ValueError as e:
        raise GraphFormatError(str(e)) from None


def serialize_ncl(inst: NCLInstance) -> str:
    G = inst.G
    out = [f"{G.n} {G.m}", "phi: " + " ".join(map(str, inst.phi))]
    out += [f"{u} {v}" for u, v in G.edges]
    out.append("orientA:")
    out += [f"{u} {v}" for u, v in inst.orientA]
    out.append("orientB:")
    out += [f"{u} {v}" for u, v in inst.orientB]
    return "\n".join(out) + "\n"


def serialize_reversals(flips: Sequence[Arc]) -> str:
    return "".join(f"{x} {y}\n" for x, y in flips)


def parse_reversals(text: str) -> list[Arc]:
    out = []
    for i, ln in enumerate(text.splitlines(), start=1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError("expected 'x y'", i)
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError("expected integers", i) from None
    return out
