"""nkline: construction and exact certification of maximum point sets
with no k+1 collinear points in square integer grids."""

from .bifactor import (
    BipartiteFactor,
    OneFactorization,
    circulant_factor,
    derive_seed,
    matching_containment_probability,
    one_factorize,
    perfect_matching,
    sample_r_factor,
)
from .bounds import (
    BoundsProfile,
    compute_profile,
    estimate_growth_coefficient,
    feasible_k_range,
    growth_coefficient,
    smallest_feasible_n,
)
from .construct import (
    ConstructionCertificate,
    ConstructionError,
    RetriesExhausted,
    adjust_k,
    adjust_n,
    biuniform_construct,
    explicit_construct,
    pipeline,
)
from .grid import (
    Direction,
    FeasibilityMatrix,
    GridSpec,
    PointSet,
    SubgridDecomposition,
    expected_load,
    feasibility_matrix_3x3,
    feasibility_matrix_4x4,
    is_feasible,
    line_points,
    max_expected_load,
)
from .pointfile import ParsedPointSet, ParseError, parse, serialize
from .secants import (
    CensusRow,
    VerificationReport,
    census,
    primitive_directions,
    richness_bound,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteFactor",
    "BoundsProfile",
    "CensusRow",
    "ConstructionCertificate",
    "ConstructionError",
    "Direction",
    "FeasibilityMatrix",
    "GridSpec",
    "OneFactorization",
    "ParseError",
    "ParsedPointSet",
    "PointSet",
    "RetriesExhausted",
    "SubgridDecomposition",
    "VerificationReport",
    "adjust_k",
    "adjust_n",
    "biuniform_construct",
    "census",
    "circulant_factor",
    "compute_profile",
    "derive_seed",
    "estimate_growth_coefficient",
    "expected_load",
    "explicit_construct",
    "feasibility_matrix_3x3",
    "feasibility_matrix_4x4",
    "feasible_k_range",
    "growth_coefficient",
    "is_feasible",
    "line_points",
    "matching_containment_probability",
    "max_expected_load",
    "one_factorize",
    "parse",
    "perfect_matching",
    "pipeline",
    "primitive_directions",
    "richness_bound",
    "sample_r_factor",
    "serialize",
    "smallest_feasible_n",
    "verify",
]
