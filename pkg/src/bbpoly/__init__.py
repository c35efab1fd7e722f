"""Flow decompositions of smooth lattice polytopes.

Compute the per-vertex cell structure induced by an admissible one-parameter
direction on a lattice polytope, and decide filterability, stratification,
convexity and product-of-simplices structure with cross-checked criteria.
"""

__version__ = "0.1.0"

from .errors import ConsistencyError, InadmissibleCocharacter, InvalidInput
from .polytope import (
    Face,
    Polytope,
    TwoFaceShape,
    build,
    classify_two_face,
    induce_cocharacter,
    is_simple,
    is_smooth,
    restrict_to_face,
)
from .flow import (
    BBDecomposition,
    bb_decomposition,
    bb_dims,
    bb_face,
    face_extrema,
    filtering_order,
    is_admissible,
    orbit_graph,
)
from .criteria import (
    classify_stratification,
    cocharacter_sweep,
    gm_convexity,
    orbit_closure_convexity_all,
    stratification_check,
    stratifying_witness,
    well_rounded,
    well_rounded_3d,
)
from .factorization import (
    FactorStatus,
    affine_factorize,
    edge_classes,
    unimodular_normalize,
)
from .flowgraph import (
    FlowGraph,
    cells_per_dimension,
    flowgraph_from_json,
    from_orbit_graph,
    is_filterable,
    numeric_strat_condition,
)
