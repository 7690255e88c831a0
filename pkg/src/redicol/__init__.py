"""Reconfiguration of digraph dicolourings: degeneracy measures, recolouring
sequences, exhaustive exploration of the dicolouring graph, explicit
constructions and hardness reductions."""

from .colouring import (Dicolouring, InvalidColouring, ListAssignment, SequenceError,
                        blocked_vertices, check_dicolouring, cycle_through, is_dicolouring,
                        is_frozen_colouring, monochromatic_cycle, validate_sequence)
from .degeneracy import (Mode, all_degeneracies, degeneracy, dichromatic_number,
                         k_dicolouring, max_average_degree)
from .digraph import (Digraph, Graph, GraphFormatError, bidirect, digirth, digons,
                      is_acyclic, is_oriented, parse_digraph, parse_graph,
                      serialize_digraph, serialize_graph)
from .explorer import (BudgetExceeded, components, enumerate_dicolourings, frozen_vertices,
                       is_freezable, is_mixing, mirror_reachable, shortest_path)
from .builders import (BuildReport, BuilderAbort, PreconditionError, acyclic_arc_partition,
                       build, build_avg_degen, build_linear, build_min_degen, build_subcubic,
                       lift_proper_sequence)

__version__ = "0.1.0"

__all__ = [
    "Dicolouring",
    "InvalidColouring",
    "ListAssignment",
    "SequenceError",
    "blocked_vertices",
    "check_dicolouring",
    "cycle_through",
    "is_dicolouring",
    "is_frozen_colouring",
    "monochromatic_cycle",
    "validate_sequence",
    "Mode",
    "all_degeneracies",
    "degeneracy",
    "dichromatic_number",
    "k_dicolouring",
    "max_average_degree",
    "Digraph",
    "Graph",
    "GraphFormatError",
    "bidirect",
    "digirth",
    "digons",
    "is_acyclic",
    "is_oriented",
    "parse_digraph",
    "parse_graph",
    "serialize_digraph",
    "serialize_graph",
    "BudgetExceeded",
    "components",
    "enumerate_dicolourings",
    "frozen_vertices",
    "is_freezable",
    "is_mixing",
    "mirror_reachable",
    "shortest_path",
    "BuildReport",
    "BuilderAbort",
    "PreconditionError",
    "acyclic_arc_partition",
    "build",
    "build_avg_degen",
    "build_linear",
    "build_min_degen",
    "build_subcubic",
    "lift_proper_sequence",
]
