"""Command-line entry point.

Reports go to standard output as ``key=value`` lines.  Exit codes: 0 yes /
success, 1 no / unreachable / invalid, 2 usage or parse error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import builders, constructions, explorer, reductions
from .colouring import (Dicolouring, InvalidColouring, SequenceError, blocked_vertices,
                        check_dicolouring, is_frozen_colouring, monochromatic_cycle,
                        validate_sequence)
from .degeneracy import Mode, degeneracy, dichromatic_number, max_average_degree
from .digraph import (Digraph, GraphFormatError, digirth, digons, is_oriented,
                      parse_digraph, parse_graph, serialize_digraph, serialize_graph)
from .io import (parse_colouring, parse_lists, parse_sequence, serialize_colouring,
                 serialize_lists, serialize_sequence, to_dot)
from .random_graphs import CLASSES, random_dicolouring, random_instance

log = logging.getLogger("redicol")

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _b(x: bool) -> str:
    return "true" if x else "false"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else _frac(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return str(x)


def _emit(lines, report: str | None = None) -> None:
    text = "".join(f"{ln}\n" for ln in lines)
    sys.stdout.write(text)
    if report:
        Path(report).write_text(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


class _Inputs:
    """Reads files and tags parse errors with the file name."""

    @staticmethod
    def _wrap(path, fn, *args):
        try:
            return fn(_read(path), *args)
        except GraphFormatError as e:
            raise GraphFormatError(f"{path}: {e}") from None

    def digraph(self, path: str) -> Digraph:
        return self._wrap(path, parse_digraph)

    def graph(self, path: str):
        return self._wrap(path, parse_graph)

    def colouring(self, path: str, D: Digraph, k: int) -> Dicolouring:
        return self._wrap(path, parse_colouring, D.n, k)

    def sequence(self, path: str):
        return self._wrap(path, parse_sequence)

    def lists(self, path: str, D: Digraph, k: int):
        return self._wrap(path, parse_lists, D.n, k)

    def ncl(self, path: str):
        return self._wrap(path, reductions.parse_ncl)


IN = _Inputs()


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    D = IN.digraph(args.digraph)
    lines = [f"n={D.n}", f"m={D.m}", f"digons={len(digons(D))}",
             f"oriented={_b(is_oriented(D))}", f"digirth={_num(digirth(D))}"]
    if D.n:
        for mode in Mode:
            rep = degeneracy(D, mode)
            lines.append(f"degeneracy_{mode.value}={_num(rep.value)}")
            lines.append(f"degeneracy_{mode.value}_witness={','.join(map(str, rep.witness))}")
        dens = max_average_degree(D)
        lines.append(f"mad={_frac(dens.mad)}")
        lines.append(f"mad_decimal={float(dens.mad):.6f}")
        lines.append(f"mad_witness={','.join(map(str, dens.witness))}")
    if args.chi_limit:
        chi = dichromatic_number(D, args.chi_limit)
        lines.append(f"dichromatic={'exceeds_' + str(args.chi_limit) if chi is None else chi}")
    _emit(lines, args.report)
    return EXIT_YES


def cmd_check(args) -> int:
    D = IN.digraph(args.digraph)
    a = IN.colouring(args.colouring, D, args.k)
    L = IN.lists(args.lists, D, args.k) if args.lists else None
    lines = []
    cyc = monochromatic_cycle(D, a.colours)
    lines.append(f"dicolouring={_b(cyc is None)}")
    if cyc is not None:
        lines.append(f"cycle={','.join(map(str, cyc))}")
        _emit(lines, args.report)
        return EXIT_NO
    if args.dot:
        _write(args.dot, to_dot(D, a))
    if args.sequence:
        steps = IN.sequence(args.sequence)
        try:
            final = validate_sequence(D, a, steps, L)
        except SequenceError as e:
            lines += ["sequence_valid=false", f"failed_step={e.step}", f"reason={e.reason}"]
            if e.cycle:
                lines.append(f"cycle={','.join(map(str, e.cycle))}")
            _emit(lines, args.report)
            return EXIT_NO
        except InvalidColouring as e:
            lines += ["sequence_valid=false", f"reason={e}"]
            _emit(lines, args.report)
            return EXIT_NO
        lines += ["sequence_valid=true", f"length={len(steps)}"]
        if args.target:
            b = IN.colouring(args.target, D, args.k)
            lines.append(f"reaches_target={_b(final == b)}")
            _emit(lines, args.report)
            return EXIT_YES if final == b else EXIT_NO
        _write(args.out, serialize_colouring(final))
    _emit(lines, args.report)
    return EXIT_YES


def cmd_path(args) -> int:
    D = IN.digraph(args.digraph)
    a = IN.colouring(args.source, D, args.k)
    b = IN.colouring(args.target, D, args.k)
    check_dicolouring(D, a)
    check_dicolouring(D, b)
    try:
        name, rep = builders.build(args.method, D, args.k, a, b,
                                   budget=args.step_budget, state_budget=args.budget)
    except builders.PreconditionError as e:
        _emit([f"method={args.method}", "precondition=false", f"reason={e}"], args.report)
        return EXIT_NO
    except builders.BuilderAbort as e:
        _emit([f"method={args.method}", "aborted=true", f"reason={e}"], args.report)
        return EXIT_NO
    except ValueError as e:
        if str(e) != "unreachable":
            raise
        _emit(["method=bfs", "reachable=false"], args.report)
        return EXIT_NO
    validate_sequence(D, a, rep.sequence)
    lines = [f"method={name}", "reachable=true"]
    lines += [f"{k}={v}" for k, v in rep.certificate().items()]
    _emit(lines, args.report)
    _write(args.out, serialize_sequence(rep.sequence))
    return EXIT_YES


def cmd_explore(args) -> int:
    D = IN.digraph(args.digraph)
    summ = explorer.components(D, args.k, with_diameter=args.diameter, budget=args.budget,
                               diameter_budget=args.diameter_budget, threads=args.threads)
    lines = [f"k={args.k}", f"total={summ.total}", f"components={summ.count}",
             f"mixing={_b(summ.count <= 1)}",
             f"frozen_components={sum(c.frozen for c in summ.components)}"]
    for i, c in enumerate(summ.components[:args.show]):
        row = f"component_{i}=size:{c.size} frozen:{_b(c.frozen)}"
        if c.diameter is not None:
            row += f" diameter:{c.diameter}"
        if args.k < 10:
            row += " rep:" + "".join(map(str, c.representative.colours))
        lines.append(row)
    _emit(lines, args.report)
    return EXIT_YES if summ.count <= 1 else EXIT_NO


def cmd_frozen(args) -> int:
    D = IN.digraph(args.digraph)
    a = IN.colouring(args.colouring, D, args.k)
    check_dicolouring(D, a)
    blocked = blocked_vertices(D, a)
    frozen = is_frozen_colouring(D, a)
    lines = [f"frozen={_b(frozen)}", f"blocked={','.join(map(str, blocked))}"]
    if args.explore:
        fv = explorer.frozen_vertices(D, args.k, a, budget=args.budget)
        lines.append(f"frozen_vertices={','.join(map(str, fv))}")
    _emit(lines, args.report)
    return EXIT_YES if frozen else EXIT_NO


def cmd_freezable(args) -> int:
    D = IN.digraph(args.digraph)
    a = explorer.is_freezable(D, args.k, budget=args.budget)
    lines = [f"freezable={_b(a is not None)}"]
    if a is not None:
        lines.append("colouring=" + ",".join(map(str, a.colours)))
        _write(args.out, serialize_colouring(a))
    _emit(lines, args.report)
    return EXIT_YES if a is not None else EXIT_NO


def cmd_mirror(args) -> int:
    D = IN.digraph(args.digraph)
    a = IN.colouring(args.colouring, D, 2)
    ok = explorer.mirror_reachable(D, a, budget=args.budget)
    _emit([f"mirror_reachable={_b(ok)}"], args.report)
    return EXIT_YES if ok else EXIT_NO


def cmd_partition(args) -> int:
    D = IN.digraph(args.digraph)
    p = builders.acyclic_arc_partition(D)
    _write(args.out_b, serialize_digraph(p.part_b()))
    _write(args.out_rest, serialize_digraph(p.part_rest()))
    _emit([f"b_arcs={len(p.B)}", f"rest_arcs={len(p.rest)}", "b_acyclic=true",
           "rest_acyclic=true", "ordering=" + ",".join(map(str, p.ordering))], args.report)
    return EXIT_YES


def _save_construction(res: constructions.ConstructionResult, prefix: str | None, dot: bool) -> None:
    if not prefix:
        return
    if res.digraph is not None:
        _write(prefix + ".dg", serialize_digraph(res.digraph))
    else:
        _write(prefix + ".g", serialize_graph(res.graph))
    _write(prefix + ".col", serialize_colouring(res.colouring))
    _write(prefix + ".cert", "\n".join(res.certificate_lines()) + "\n")
    if dot:
        G = res.digraph if res.digraph is not None else res.graph
        _write(prefix + ".dot", to_dot(G, res.colouring, res.labels))


def cmd_generate(args) -> int:
    fam, p = args.family, args.params
    need = {"fig1": 0, "planar-freeze": 0, "fpath": 1, "btower": 1, "gtower": 1,
            "kbipartite": 1, "fpath-k": 2, "compose": 3}
    if len(p) != need[fam]:
        raise UsageError(f"generate {fam} takes {need[fam]} parameter(s)")
    if fam == "kbipartite":
        G = constructions.complete_bipartite(int(p[0]))
        if args.out:
            _write(args.out + ".g", serialize_graph(G))
        _emit([f"n={G.n}", f"m={G.m}", f"regular={G.n // 2}"], args.report)
        return EXIT_YES
    if fam == "compose":
        G_prev = IN.graph(p[0])
        k_prev = max((int(ln.split()[1]) for ln in _read(p[1]).splitlines()
                      if ln.strip() and not ln.startswith("#")), default=1)
        a = IN._wrap(p[1], parse_colouring, G_prev.n, k_prev)
        res = constructions.compose_freezable(G_prev, a, IN.graph(p[2]))
    else:
        ints = [int(x) for x in p]
        res = {"fig1": constructions.frozen_4regular,
               "planar-freeze": constructions.planar_freeze_gadget,
               "fpath": constructions.freezable_path_pair,
               "fpath-k": constructions.freezable_k,
               "btower": constructions.out_degenerate_tower,
               "gtower": constructions.non_mixing_tower}[fam](*ints)
    _save_construction(res, args.out, args.dot)
    _emit(res.certificate_lines(), args.report)
    return EXIT_YES


def cmd_ncl(args) -> int:
    inst = IN.ncl(args.file)
    if args.action == "check":
        _emit([f"n={inst.G.n}", f"m={inst.G.m}", "cubic=true", "orientA_proper=true",
               "orientB_proper=true"], args.report)
        return EXIT_YES
    ok, flips = reductions.ncl_reachable(inst, budget=args.budget)
    _emit([f"reachable={_b(ok)}", f"length={len(flips)}" if ok else "length=none"], args.report)
    if ok:
        _write(args.out, reductions.serialize_reversals(flips))
    return EXIT_YES if ok else EXIT_NO


def _save_plain(pi: reductions.PlainInstance, prefix: str | None) -> None:
    if prefix:
        _write(prefix + ".dg", serialize_digraph(pi.D))
        _write(prefix + ".a.col", serialize_colouring(pi.a))
        _write(prefix + ".b.col", serialize_colouring(pi.b))
        _write(prefix + ".gadget", "".join(f"{v}\n" for v in pi.gadget_vertices))


def cmd_reduce(args) -> int:
    if args.kind == "ncl2list":
        inst = IN.ncl(args.inputs[0])
        P = reductions.ncl_to_list_instance(inst, planar=args.planar)
        if args.out:
            _write(args.out + ".dg", serialize_digraph(P.D))
            _write(args.out + ".lists", serialize_lists(P.L))
            _write(args.out + ".a.col", serialize_colouring(P.a))
            _write(args.out + ".b.col", serialize_colouring(P.b))
            _write(args.out + ".roles", "".join(f"{v} {r}\n" for v, r in enumerate(P.roles)))
        cert = reductions.degree_certificate(P)
        _emit([f"{k}={v}" for k, v in cert.items()], args.report)
        return EXIT_YES
    if args.kind == "list2plain":
        if len(args.inputs) != 4:
            raise UsageError("reduce list2plain DIGRAPH LISTS A B -k K")
        D = IN.digraph(args.inputs[0])
        L = IN.lists(args.inputs[1], D, args.k)
        a, b = (IN.colouring(x, D, args.k) for x in args.inputs[2:])
        pi = reductions.list_to_plain(D, L, a, b, args.k, planar=args.planar)
    elif args.kind == "orient":
        if len(args.inputs) != 3:
            raise UsageError("reduce orient DIGRAPH A B -k K")
        D = IN.digraph(args.inputs[0])
        a, b = (IN.colouring(x, D, args.k) for x in args.inputs[1:])
        pi = reductions.eliminate_digons(D, args.k, a, b)
    else:
        if args.vertex is None or args.colour is None:
            raise UsageError("reduce freeze needs -v and -c")
        D = IN.digraph(args.inputs[0])
        D2, cols = reductions.freeze_vertex_oriented_planar(D, args.vertex, args.colour)
        _write(args.out + ".dg" if args.out else None, serialize_digraph(D2))
        _emit([f"n={D2.n}", f"m={D2.m}", f"oriented={_b(is_oriented(D2))}",
               "gadget_colours=" + ",".join(map(str, cols))], args.report)
        return EXIT_YES
    _save_plain(pi, args.out)
    _emit([f"{k}={v}" for k, v in pi.certificate.items()], args.report)
    return EXIT_YES


def cmd_translate(args) -> int:
    inst = IN.ncl(args.ncl)
    P = reductions.ncl_to_list_instance(inst, planar=args.planar)
    if args.direction == "fwd":
        flips = IN._wrap(args.sequence, reductions.parse_reversals)
        steps = reductions.translate_reorienting_to_redicolouring(inst, P, flips)
        _write(args.out, serialize_sequence(steps))
        _emit([f"reversals={len(flips)}", f"steps={len(steps)}", "validated=true"], args.report)
    else:
        steps = IN.sequence(args.sequence)
        flips = reductions.translate_redicolouring_to_reorienting(inst, P, steps)
        _write(args.out, reductions.serialize_reversals(flips))
        _emit([f"steps={len(steps)}", f"reversals={len(flips)}", "proper=true"], args.report)
    return EXIT_YES


def cmd_random(args) -> int:
    D = random_instance(args.kind, args.n, args.p, args.seed)
    _write(args.out, serialize_digraph(D))
    if not args.out:
        sys.stdout.write(serialize_digraph(D))
    if args.colouring:
        a = random_dicolouring(D, args.k, seed=args.seed)
        _write(args.colouring, serialize_colouring(a))
    return EXIT_YES


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="redicol", description="Digraph dicolouring reconfiguration toolkit.")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--threads", type=int, default=1, help="explorer worker threads")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--report", help="also write the key=value report here")
        return p

    def budget(p):
        p.add_argument("--budget", type=int, default=explorer.DEFAULT_BUDGET,
                       help="maximum number of explored states")

    p = add("analyze", cmd_analyze, "degeneracies, mad, digirth")
    p.add_argument("digraph")
    p.add_argument("--chi-limit", type=int, default=0)

    p = add("check", cmd_check, "validate a colouring and optionally a sequence")
    p.add_argument("digraph")
    p.add_argument("colouring")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--sequence")
    p.add_argument("--lists")
    p.add_argument("--target", help="colouring the sequence must end at")
    p.add_argument("--out", help="write the final colouring here")
    p.add_argument("--dot")

    p = add("path", cmd_path, "build a redicolouring sequence")
    p.add_argument("digraph")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--method", choices=builders.METHODS, default="auto")
    p.add_argument("--out")
    p.add_argument("--step-budget", type=int, default=builders.DEFAULT_STEP_BUDGET)
    budget(p)

    p = add("explore", cmd_explore, "components of the k-dicolouring graph")
    p.add_argument("digraph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--diameter", action="store_true")
    p.add_argument("--diameter-budget", type=int, default=explorer.DEFAULT_DIAMETER_BUDGET)
    p.add_argument("--show", type=int, default=20, help="components listed in the report")
    budget(p)

    p = add("frozen", cmd_frozen, "blocked vertices and frozenness of a colouring")
    p.add_argument("digraph")
    p.add_argument("colouring")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--explore", action="store_true", help="also list frozen vertices by BFS")
    budget(p)

    p = add("freezable", cmd_freezable, "search for a frozen k-dicolouring")
    p.add_argument("digraph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out")
    budget(p)

    p = add("mirror", cmd_mirror, "is the mirror of a 2-dicolouring reachable")
    p.add_argument("digraph")
    p.add_argument("colouring")
    budget(p)

    p = add("partition", cmd_partition, "split arcs into two acyclic parts")
    p.add_argument("digraph")
    p.add_argument("--out-b")
    p.add_argument("--out-rest")

    p = add("generate", cmd_generate, "explicit constructions")
    p.add_argument("family", choices=["fig1", "fpath", "fpath-k", "btower", "gtower",
                                      "planar-freeze", "kbipartite", "compose"])
    p.add_argument("params", nargs="*")
    p.add_argument("--out", help="output file prefix")
    p.add_argument("--dot", action="store_true", help="also write PREFIX.dot")

    p = add("ncl", cmd_ncl, "constraint-logic instances")
    p.add_argument("action", choices=["check", "solve"])
    p.add_argument("file")
    p.add_argument("--out", help="reversal sequence output")
    p.add_argument("--budget", type=int, default=reductions.DEFAULT_NCL_BUDGET)

    p = add("reduce", cmd_reduce, "hardness reductions")
    p.add_argument("kind", choices=["ncl2list", "list2plain", "orient", "freeze"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("--planar", action="store_true")
    p.add_argument("-v", "--vertex", type=int)
    p.add_argument("-c", "--colour", type=int)
    p.add_argument("--out", help="output file prefix")

    p = add("translate", cmd_translate, "translate sequences across the NCL reduction")
    p.add_argument("direction", choices=["fwd", "bwd"])
    p.add_argument("ncl")
    p.add_argument("sequence")
    p.add_argument("--planar", action="store_true")
    p.add_argument("--out")

    p = add("random", cmd_random, "seeded random instance")
    p.add_argument("kind", choices=CLASSES)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--colouring", help="also write a random dicolouring here")
    p.add_argument("-k", type=int, default=2)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        print(f"redicol: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "k", 1) is not None and getattr(args, "k", 1) < 1:
        print("redicol: error: k must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("redicol: error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except explorer.BudgetExceeded as e:
        print(f"redicol: budget exceeded: {e}", file=sys.stderr)
        print(f"budget_exceeded=true\nrequired={e.required}")
        return EXIT_BUDGET
    except (UsageError, GraphFormatError) as e:
        print(f"redicol: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidColouring as e:
        print(f"redicol: invalid colouring: {e}", file=sys.stderr)
        return EXIT_NO
    except (ValueError, reductions.ReductionError) as e:
        print(f"redicol: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
