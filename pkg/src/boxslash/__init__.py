"""Tree-path product graphs, small-instance layout solvers, and the
monotone-sequence, thinning, and grid-boundary machinery built on them."""

from .errors import (
    BoxslashError,
    CrossingContradiction,
    GoodPointsUnavailable,
    InconsistencyError,
    PassStarvation,
    PreconditionError,
    ShapeError,
    SizeLimitError,
)
from .product import (
    EdgeKind,
    NodeIndex,
    ProductGraph,
    PVertex,
    ROOT,
    Tree,
    TreeSpec,
    boxslash_product,
    build_tree,
    concat,
    restrict_subtree,
)
from .layout import (
    EdgeColoring,
    LinearOrder,
    PairRelation,
    canonical_order,
    classify_pair,
    layout_from_json,
    layout_to_json,
    max_rainbow,
    queues_for_order,
    stack_pages_for_order,
    three_queue_layout,
    validate_queue_layout,
    validate_stack_layout,
)
from .solver import (
    SolveResult,
    probe_queue_lower_bound,
    queue_number,
    stack_number,
)
from .sequences import (
    ChainWitness,
    Direction,
    RelatedKind,
    bundled_chain_length_cap,
    chain_interleave,
    check_bundled,
    check_rainbow,
    derive_fan_fan_crossing,
    derive_fan_rainbow_crossing,
    direction_set,
    fan_check,
    is_monotone,
    is_related,
    max_interleave,
    rainbow_interleave_transfer,
    related_chain_interleave_cap,
    strongly_interleave,
)
from .passes import (
    CheckReport,
    ColorTable,
    DirectionTable,
    LexMonotoneWitness,
    PipelineResult,
    check_child_symmetry,
    check_direction_consistency,
    check_identity_permutation,
    check_related_sequence_families,
    extract_direction_table,
    find_monotone_subsequence,
    lex_monotone_subarray,
    pass_colour,
    pass_lex,
    pass_order,
    run_passes,
    transport_coloring,
    transport_order,
    verify_lex_monotone,
)
from .hexgrid import (
    BoundaryLine,
    CriticalPoint,
    DualEdge,
    DualVertex,
    GoodPoint,
    GoodPointsResult,
    HexColoring,
    HexGrid,
    LongBoundaryWitness,
    SpanningPath,
    TopBoundaries,
    TopBoundary,
    TopCellsWitness,
    boundary_preservation_check,
    boundary_subgraph,
    critical_points,
    cut_points,
    direction_layer,
    dual_edges,
    find_good_points,
    good_points_threshold,
    maximal_boundaries,
    monochromatic_spanning_path,
    random_coloring,
    required_grid_size,
    top_or_long,
    trace_boundary,
)

__version__ = "0.1.0"
