"""L(p,q) labelings of interval-type graph representations.

Greedy labelers with proven span bounds for interval, interval k-graph,
circular-arc, permutation (containment) and cointerval (interval order)
representations, plus exact small-instance oracles and a validator to
check everything against.
"""

from .graph import (
    CapExceededError,
    Graph,
    GraphError,
    GraphStats,
    build_graph,
    clique_number_exact,
    compute_stats,
    dist2_set,
    find_2k2,
    is_2k2_free,
    is_connected,
    square,
)
from .instances import InstanceFormatError, gen_instance, parse_instance, serialize_instance
from .labeling import (
    BoundReport,
    Labeling,
    LabelingFormatError,
    LpqParams,
    class_bound,
    defer_degree_one,
    greedy_lpq,
    label_circular_arc,
    label_cointerval,
    label_instance,
    label_interval,
    label_interval_k,
    label_permutation,
    parse_labeling,
    serialize_labeling,
)
from .reps import (
    CircularArcRep,
    CircularSplit,
    ContainmentRep,
    IntervalKRep,
    IntervalOrderRep,
    IntervalRep,
    RepError,
    derive_graph,
    minimal_elements,
    rightpoint_order_desc,
    split_circular,
)
from .verify import (
    ClaimCheck,
    ClaimReport,
    Violation,
    bound_report,
    check_structural_claims,
    chi_square_exact,
    exact_lambda,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapExceededError",
    "CircularArcRep",
    "CircularSplit",
    "ClaimCheck",
    "ClaimReport",
    "ContainmentRep",
    "Graph",
    "GraphError",
    "GraphStats",
    "InstanceFormatError",
    "IntervalKRep",
    "IntervalOrderRep",
    "IntervalRep",
    "Labeling",
    "LabelingFormatError",
    "LpqParams",
    "RepError",
    "Violation",
    "bound_report",
    "build_graph",
    "check_structural_claims",
    "chi_square_exact",
    "class_bound",
    "clique_number_exact",
    "compute_stats",
    "defer_degree_one",
    "derive_graph",
    "dist2_set",
    "exact_lambda",
    "find_2k2",
    "gen_instance",
    "greedy_lpq",
    "is_2k2_free",
    "is_connected",
    "label_circular_arc",
    "label_cointerval",
    "label_instance",
    "label_interval",
    "label_interval_k",
    "label_permutation",
    "minimal_elements",
    "parse_instance",
    "parse_labeling",
    "rightpoint_order_desc",
    "serialize_instance",
    "serialize_labeling",
    "split_circular",
    "square",
    "validate",
]
