"""Discrete cell-complex topology: flatness, collars, deformation,
separation, and constructive contraction."""

from .complexes import (Cell, CellChain, CheckReport, DiscreteSpace,
                        Subcomplex, check_regular, is_closed_manifold,
                        is_discrete_curve, is_minimal_cycle, link,
                        orientation_of_cycle, partial_graph, star)
from .deformation import (DeformationTrace, are_gradually_varied,
                          are_side_gradually_varied, crosses_over,
                          decompose_minimal_moves, detour_sequence,
                          search_contraction, verify_contraction, xor_sum)
from .errors import (BudgetExhausted, InputError, PreconditionError,
                     TopologyError, UnsupportedConfiguration)
from .flatness import (CollarCertificate, build_collar, find_focal_points,
                       is_locally_flat, is_locally_flat_triangulated,
                       verify_collar)
from .metrics import (UNREACHABLE, graph_distance, k_cell_distance,
                      verify_distance_equality)
from .separation import (ContractionTrace, SeparationReport,
                         components_of_complement, contract_to_cell,
                         first_crossing, flatten_path, invert_trace, replay)

__version__ = "0.1.0"

__all__ = [
    "Cell", "CellChain", "CheckReport", "DiscreteSpace", "Subcomplex",
    "partial_graph", "is_minimal_cycle", "star", "link", "check_regular",
    "is_closed_manifold", "is_discrete_curve", "orientation_of_cycle",
    "graph_distance", "k_cell_distance", "verify_distance_equality",
    "UNREACHABLE",
    "CollarCertificate", "is_locally_flat", "is_locally_flat_triangulated",
    "find_focal_points", "build_collar", "verify_collar",
    "DeformationTrace", "xor_sum", "are_gradually_varied",
    "decompose_minimal_moves", "crosses_over", "are_side_gradually_varied",
    "detour_sequence", "verify_contraction", "search_contraction",
    "SeparationReport", "ContractionTrace", "components_of_complement",
    "first_crossing", "flatten_path", "contract_to_cell", "invert_trace",
    "replay",
    "TopologyError", "InputError", "PreconditionError",
    "UnsupportedConfiguration", "BudgetExhausted",
]
