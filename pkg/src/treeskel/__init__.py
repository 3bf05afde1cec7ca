"""Exact eigenspace structure of trees: skeletons, matchings, {0, 1, -1} bases,
meta skeleton composition and tree pattern matrices."""

__version__ = "0.1.0"

from .errors import DomainError, InternalConsistencyError, NotAnEigenvalueError
from .graph import Forest, GraphError, GraphFormatError, parse_graph, read_graph, serialize_graph
from .linalg import (
    RationalBasis,
    TreePatternMatrix,
    adjacency_matrix,
    eigenspace_basis,
    integer_spectrum,
    multiplicity,
    straighten_basis,
    verify_eigenvector,
)
from .matching import classify_vertices, kernel_basis, maximum_matching
from .skeleton import (
    lift_null_vector,
    meta_skeleton,
    multiplicity_via_matching,
    project_eigenvector,
    skeleton,
    support_report,
    x_skeleton,
)
from .simply_structured import has_simply_structured_basis, is_class_C, simply_structured_basis
from .composition import BlowupPlan, MetaSkeletonSpec, Replacement, blow_up, validate_meta_skeleton
from .tree_pattern import nylen_nullity, pattern_support, transfer_null_pattern
