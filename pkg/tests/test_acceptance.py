"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Every comparison is exact (integers or Fractions); the only tolerances are
the pinned sample counts, seeds, size caps and wall-clock limits below.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

import oracles
from redicol.builders import (acyclic_arc_partition, build_linear, build_subcubic,
                              lift_proper_sequence, proper_colouring_greedy)
from redicol.colouring import (Dicolouring, blocked_vertices, is_dicolouring,
                               is_frozen_colouring, validate_sequence)
from redicol.constructions import (compose_freezable, complete_bipartite, freezable_k,
                                   freezable_path_pair, frozen_4regular, non_mixing_tower,
                                   single_vertex_base, tower)
from redicol.degeneracy import Mode, degeneracy, dichromatic_number, max_average_degree
from redicol.digraph import (Digraph, bidirect, complete_graph, digons, girth, is_acyclic,
                             is_oriented)
from redicol.explorer import components, frozen_colourings, is_mixing, shortest_path
from redicol.random_graphs import (random_dicolouring, random_digraph, random_oriented,
                                   random_subcubic)
from redicol.reductions import (NCLInstance, apply_reversals, ncl_reachable,
                                ncl_to_list_instance, proper_orientations,
                                translate_redicolouring_to_reorienting,
                                translate_reorienting_to_redicolouring)

pytestmark = pytest.mark.acceptance

# pinned parameters
SEED = 20240601
DENSITIES = (0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0)
STATE_CAP = 1 << 22          # k^n cap per random explorer sample (the K8 extreme is added explicitly)
FIG1_SECONDS = 1.0
C2_SAMPLES = C3_SAMPLES = 200
C4_SAMPLES = 100
C5_SAMPLES = 200
C5_DIGON_SAMPLES = 50
C8_SAMPLES = 500
C11_PARTITIONS = 500
C11_LIFTS = 100
C11_LIFT_STEPS = 40
C12_SAMPLES = 1000
MAD_THRESHOLD = Fraction(7, 2)


def _arcs(D: Digraph):
    return list(D.arcs)


# 1 ---------------------------------------------------------------------------

def test_c01_fig1_reproduction(verdict):
    t0 = time.perf_counter()
    res = frozen_4regular()
    D, a = res.D, res.colouring
    regular = all(D.out_degree(v) == 2 and D.in_degree(v) == 2 for v in range(D.n))
    singleton = a in frozen_colourings(D, 2)
    comps = components(D, 2)
    rep_singleton = any(c.size == 1 and c.representative == a for c in comps.components)
    elapsed = time.perf_counter() - t0
    checks = {
        "n=8": D.n == 8, "m=16": D.m == 16, "oriented": is_oriented(D),
        "4-regular": regular, "dicolouring": is_dicolouring(D, a),
        "oracle_dicolouring": oracles.is_dicolouring(D.n, _arcs(D), a.colours),
        "all_blocked": blocked_vertices(D, a) == list(range(8)),
        "frozen": is_frozen_colouring(D, a),
        "oracle_frozen": oracles.frozen(D.n, _arcs(D), 2, a.colours),
        "size1_component": singleton and rep_singleton,
        f"time<{FIG1_SECONDS}s": elapsed < FIG1_SECONDS,
    }
    bad = [k for k, v in checks.items() if not v]
    verdict(1, not bad, f"fig1 graph: {len(checks) - len(bad)}/{len(checks)} checks "
                        f"({elapsed:.3f}s){' failed: ' + ','.join(bad) if bad else ''}")


# 2 ---------------------------------------------------------------------------

def _sample_explorer_instances(rng, count, make, k_of):
    """Random (D, k) with k^n <= STATE_CAP, cycling through the density grid."""
    out = []
    i = 0
    while len(out) < count:
        p = DENSITIES[i % len(DENSITIES)]
        n = rng.randint(1, 8)
        i += 1
        D = make(n, p, rng)
        k = k_of(D)
        if k ** n <= STATE_CAP:
            out.append((D, k, p))
    return out


def test_c02_min_degeneracy_plus_two_is_mixing(verdict):
    rng = random.Random(SEED + 2)
    k_of = lambda D: int(degeneracy(D, Mode.MIN).value) + 2
    samples = _sample_explorer_instances(rng, C2_SAMPLES - 1, random_digraph, k_of)
    K8 = bidirect(complete_graph(8))
    samples.append((K8, k_of(K8), 1.0))
    failures = []
    for D, k, _ in samples:
        c = components(D, k, budget=1 << 26)
        if c.count != 1:
            failures.append((D.n, D.m, k, c.count))
    dens = sorted({p for *_, p in samples})
    verdict(2, not failures, f"{len(samples)} digraphs (n<=8, p in {dens}, incl. bidirected K8), "
                             f"k=min-degeneracy+2: {len(samples) - len(failures)} single-component"
                             f"{'; failures ' + str(failures[:3]) if failures else ''}")


# 3 ---------------------------------------------------------------------------

def test_c03_avg_degeneracy_oriented_is_mixing(verdict):
    rng = random.Random(SEED + 3)
    k_of = lambda D: math.ceil(degeneracy(D, Mode.AVG).value) + 1
    samples = _sample_explorer_instances(rng, C3_SAMPLES, random_oriented, k_of)
    failures = []
    for D, k, _ in samples:
        assert is_oriented(D)
        c = components(D, k)
        if c.count != 1:
            failures.append((D.n, D.m, k, c.count))
    verdict(3, not failures, f"{len(samples)} oriented graphs (n<=8), k=ceil(avg-degeneracy)+1: "
                             f"{len(samples) - len(failures)} single-component"
                             f"{'; failures ' + str(failures[:3]) if failures else ''}")


# 4 ---------------------------------------------------------------------------

def test_c04_linear_builder_bound(verdict):
    rng = random.Random(SEED + 4)
    bad = []
    worst = Fraction(0)
    for i in range(C4_SAMPLES):
        n = rng.randint(2, 10)
        D = random_digraph(n, DENSITIES[i % len(DENSITIES)], rng)
        d = int(degeneracy(D, Mode.MIN).value)
        k = 2 * d + 2
        a = random_dicolouring(D, k, rng)
        b = random_dicolouring(D, k, rng)
        rep = build_linear(D, k, a, b)
        final = validate_sequence(D, a, rep.sequence)
        ok = (final == b and rep.length <= (d + 1) * n and max(rep.counts, default=0) <= d + 1)
        worst = max(worst, Fraction(rep.length, (d + 1) * n))
        if not ok:
            bad.append((n, D.m, k, rep.length))
    verdict(4, not bad, f"{C4_SAMPLES} digraphs (n<=10), k=2d+2: sequences validate, "
                        f"length<=(d+1)n and per-vertex<=d+1; max length/bound={worst}"
                        f"{'; failures ' + str(bad[:3]) if bad else ''}")


# 5 ---------------------------------------------------------------------------

def test_c05_subcubic(verdict):
    rng = random.Random(SEED + 5)
    bad = []
    for _ in range(C5_SAMPLES):
        n = rng.randint(2, 12)
        D = random_subcubic(n, rng.choice((0.3, 0.6, 1.0)), rng)
        assert is_oriented(D) and D.max_degree() <= 3
        a, b = random_dicolouring(D, 2, rng), random_dicolouring(D, 2, rng)
        rep = build_subcubic(D, a, b)
        final = validate_sequence(D, a, rep.sequence)
        bfs = shortest_path(D, 2, a, b)
        ok = (final == b and rep.length <= 2 * n and bfs is not None
              and rep.length >= len(bfs) and is_mixing(D, 2))
        if not ok:
            bad.append(("oriented", n, D.m))
    digon_cases = 0
    while digon_cases < C5_DIGON_SAMPLES:
        D = random_subcubic(rng.randint(2, 12), 0.8, rng, oriented=False)
        if not digons(D):
            continue
        digon_cases += 1
        if is_mixing(D, 2):
            bad.append(("digon", D.n, D.m))
    verdict(5, not bad, f"{C5_SAMPLES} subcubic oriented (n<=12): builder valid, <=2n, >=BFS, "
                        f"2-mixing; {digon_cases} subcubic with digon: not 2-mixing"
                        f"{'; failures ' + str(bad[:3]) if bad else ''}")


# 6 ---------------------------------------------------------------------------

def test_c06_towers(verdict):
    rows, ok = [], True
    for k in range(4):
        B, xi = tower(k)
        dout = degeneracy(B, Mode.OUT).value
        chi = dichromatic_number(B, k + 2)
        good = dout == k and chi == k + 1 and is_oriented(B)
        if B.n <= 7:
            good &= oracles.chromatic(B.n, _arcs(B), k + 2) == k + 1
        rows.append(f"B_{k}(n={B.n},out={dout},chi={chi})")
        ok &= good
    G1 = non_mixing_tower(1, explore=False).D
    states = 2 ** G1.n
    not_mixing = not is_mixing(G1, 2)
    oracle_comps = len(oracles.components(G1.n, _arcs(G1), 2))
    ok &= not_mixing and oracle_comps > 1 and states == 32
    verdict(6, ok, f"{' '.join(rows)}; G_1 {states}-state space not 2-mixing={not_mixing} "
                   f"(oracle components={oracle_comps})")


# 7 ---------------------------------------------------------------------------

def test_c07_density_tightness(verdict):
    rows, failed = [], []
    for n in range(2, 9):
        res = freezable_path_pair(n)
        D, a = res.D, res.colouring
        mad = max_average_degree(D).mad
        ok = (is_oriented(D) and is_frozen_colouring(D, a) and D.m == 2 * D.n
              and mad == 4 and oracles.mad(D.n, _arcs(D)) == mad)
        if n <= 5:
            ok &= oracles.frozen(D.n, _arcs(D), 2, a.colours)
        rows.append(f"F_{n}:{'ok' if ok else f'm={D.m},|V|={D.n},mad={mad},oriented={is_oriented(D)}'}")
        if not ok:
            failed.append(n)
    res = freezable_k(4, 3)
    D, a = res.D, res.colouring
    fk_ok = is_oriented(D) and is_frozen_colouring(D, a) and D.m == 3 * D.n + 3 == 39
    rows.append(f"F_4^3:m={D.m}")
    verdict(7, not failed and fk_ok, " ".join(rows))


# 8 ---------------------------------------------------------------------------

def test_c08_sparse_oriented_two_mixing(verdict):
    rng = random.Random(SEED + 8)
    counterexamples, non_mixing = [], 0
    min_mad_nonmixing = None
    for i in range(C8_SAMPLES):
        n = rng.randint(2, 7)
        D = random_oriented(n, DENSITIES[i % len(DENSITIES)], rng)
        mad = max_average_degree(D).mad
        if not is_mixing(D, 2):
            non_mixing += 1
            min_mad_nonmixing = mad if min_mad_nonmixing is None else min(min_mad_nonmixing, mad)
            if mad < MAD_THRESHOLD:
                counterexamples.append((n, D.arcs))
    verdict(8, not counterexamples,
            f"{C8_SAMPLES} oriented graphs (n<=7): {non_mixing} non-2-mixing, smallest mad among "
            f"them {min_mad_nonmixing}; counterexamples with mad<7/2: {len(counterexamples)}")


# 9 ---------------------------------------------------------------------------

def _ncl_instances():
    G = complete_graph(4)
    rng = random.Random(SEED + 9)
    phi = (1, 1, 1, 1)
    O = proper_orientations(G, phi)
    pairs = rng.sample(list(combinations(range(len(O)), 2)), 6)
    out = [NCLInstance(G, phi, O[i], O[j]) for i, j in pairs]
    # negative controls: isolated proper orientations
    phi2 = (1, 1, 2, 2)
    O2 = proper_orientations(G, phi2)
    out += [NCLInstance(G, phi2, O2[0], O2[1]), NCLInstance(G, phi2, O2[2], O2[3])]
    return out


def test_c09_reduction_soundness(verdict):
    agree, roundtrip, positives, max_free = 0, 0, 0, 0
    insts = _ncl_instances()
    for inst in insts:
        r_ncl, flips = ncl_reachable(inst)
        r_oracle = oracles.ncl_reachable(inst.G.n, list(inst.G.edges), inst.phi,
                                         inst.orientA, inst.orientB)
        P = ncl_to_list_instance(inst)
        free = len(P.free_vertices())
        max_free = max(max_free, free)
        seq = shortest_path(P.D, 2, P.a, P.b, lists=P.L, budget=1 << 12)
        if r_ncl == r_oracle == (seq is not None) and free <= 12:
            agree += 1
        positives += r_ncl
        if r_ncl:
            steps = translate_reorienting_to_redicolouring(inst, P, flips)
            ok_fwd = validate_sequence(P.D, P.a, steps, P.L) == P.b
            back = translate_redicolouring_to_reorienting(inst, P, seq)
            ok_bwd = apply_reversals(inst.G, inst.phi, inst.orientA, back) == tuple(inst.orientB)
            back2 = translate_redicolouring_to_reorienting(inst, P, steps)
            ok_rt = back2 == list(flips)
            roundtrip += ok_fwd and ok_bwd and ok_rt
        else:
            roundtrip += 1
    ok = agree == len(insts) and roundtrip == len(insts) and positives >= 5
    verdict(9, ok, f"{len(insts)} K4 NCL instances ({positives} with phi=1 reachable, "
                   f"{len(insts) - positives} negative controls): reachability agrees {agree}/{len(insts)}, "
                   f"translations round-trip {roundtrip}/{len(insts)}, max free vertices {max_free}")


# 10 --------------------------------------------------------------------------

def test_c10_composer(verdict):
    G0, a0 = single_vertex_base()
    r1 = compose_freezable(G0, a0, complete_bipartite(1))
    G1, a1 = r1.graph, r1.colouring
    k2_ok = G1.n == 2 and G1.m == 1 and is_frozen_colouring(bidirect(G1), a1) and a1.k == 2
    r2 = compose_freezable(G1, a1, complete_bipartite(2))
    G2, a2 = r2.graph, r2.colouring
    D2 = bidirect(G2)
    c4_ok = (G2.is_regular(2) and a2.k == 3 and is_frozen_colouring(D2, a2)
             and a2 in frozen_colourings(D2, 3)
             and oracles.frozen(D2.n, _arcs(D2), 3, a2.colours) and girth(G2) >= 4)
    classes_ok = all(len({len(c) for c in r.colouring.classes()}) == 1 for r in (r1, r2))
    verdict(10, k2_ok and c4_ok and classes_ok,
            f"compose(K1,K_1,1)=K2 frozen 2-colouring: {k2_ok}; compose(K2,C4): n={G2.n}, "
            f"2-regular frozen 3-colouring, girth={girth(G2)}: {c4_ok}; equal classes: {classes_ok}")


# 11 --------------------------------------------------------------------------

def _random_proper_walk(G, cols, k, steps, rng):
    cols = list(cols)
    out = []
    while len(out) < steps:
        v = rng.randrange(G.n)
        opts = [c for c in range(1, k + 1) if c != cols[v] and all(cols[w] != c for w in G.adj[v])]
        if opts:
            c = rng.choice(opts)
            cols[v] = c
            out.append((v, c))
    return out


def test_c11_arc_partition(verdict):
    rng = random.Random(SEED + 11)
    bad_part, bad_lift = 0, 0
    for i in range(C11_PARTITIONS):
        D = random_digraph(rng.randint(1, 12), DENSITIES[i % len(DENSITIES)], rng)
        p = acyclic_arc_partition(D)
        B, R = set(p.B), set(p.rest)
        ok = (not B & R and B | R == set(D.arcs) and is_acyclic(p.part_b()) and is_acyclic(p.part_rest())
              and oracles.acyclic(range(D.n), list(B)) and oracles.acyclic(range(D.n), list(R)))
        bad_part += not ok
    for i in range(C11_LIFTS):
        D = random_digraph(rng.randint(2, 12), DENSITIES[i % len(DENSITIES)], rng)
        p = acyclic_arc_partition(D)
        G = p.graph()
        k = max((G.degree(v) for v in range(G.n)), default=0) + 2
        cols = proper_colouring_greedy(G, k)
        a = Dicolouring(tuple(cols), k)
        steps = _random_proper_walk(G, cols, k, C11_LIFT_STEPS, rng)
        try:
            lift_proper_sequence(D, p, a, steps)
        except ValueError:
            bad_lift += 1
    verdict(11, bad_part == 0 and bad_lift == 0,
            f"{C11_PARTITIONS} partitions (n<=12): {C11_PARTITIONS - bad_part} valid; "
            f"{C11_LIFTS} proper walks of {C11_LIFT_STEPS} steps lifted: {C11_LIFTS - bad_lift} valid")


# 12 --------------------------------------------------------------------------

def test_c12_oracle_agreement(verdict):
    rng = random.Random(SEED + 12)
    mismatches = []
    for i in range(C12_SAMPLES):
        n = rng.randint(1, 6)
        D = random_digraph(n, rng.random(), rng)
        arcs = _arcs(D)
        for mode in Mode:
            if degeneracy(D, mode).value != oracles.degeneracy(n, arcs, mode.value):
                mismatches.append((mode.value, n, arcs))
        if max_average_degree(D).mad != oracles.mad(n, arcs):
            mismatches.append(("mad", n, arcs))
    verdict(12, not mismatches, f"{C12_SAMPLES} digraphs (n<=6): 4 degeneracy modes + mad vs "
                                f"subset brute force, mismatches {len(mismatches)}")
