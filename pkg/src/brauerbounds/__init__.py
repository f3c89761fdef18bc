"""Exact-arithmetic index lower bounds for topologically trivial Brauer
classes on very general principally polarized complex abelian varieties."""

from .exterior import AlgebraContext, MultiVector
from .linalg import AffineLattice, SmithDecomposition, smith, solve_integrality
from .model import (
    BrauerClassSpec,
    HodgeCoordinates,
    canonical_representative,
    hamming_weight,
    p_poly,
    primary_decomposition,
    symbol_length,
)
from .djp import build_system, djp_obstructed, djp_solution_family
from .steenrod import reduced_power_polynomial, refined_obstructed, steenrod_rhs
from .hotchkiss import NewtonTransform, hotchkiss_first_stage, hotchkiss_second_stage
from .driver import (
    BoundParameters,
    ObstructionReport,
    failure_degree_bound,
    indecomposability_test,
    index_lower_bound,
    table_s,
)
from .forms import FormExpression, FormParseError, parse_form
from .sampling import SampleRecord, sample_campaign

__version__ = "0.1.0"
