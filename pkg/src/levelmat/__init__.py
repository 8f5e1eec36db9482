"""Exact tools for level k-matrices, their irreducible levelers and related bounds."""

from .bounds import (
    BoundReport,
    ah_row_count,
    bound_report,
    ell_budget,
    hadamard_bound,
    lb_exponent,
    ub_lambert,
    ub_lg,
    ub_main,
    ub_polytope,
    ub_ub2,
)
from .constructions import (
    AofHSpec,
    PrimeBlockSpec,
    a_of_h,
    identity,
    lambert_extremals,
    prime_block,
    row_normalize,
    universal_matrix,
)
from .errors import (
    ContractViolation,
    DimensionError,
    InfeasibleError,
    LevelMatError,
    ParseError,
    RankDeficiencyError,
    SearchBudgetExceeded,
    SingularMatrixError,
)
from .exact_linalg import det, rank, scale_to_integer, solve
from .irreducibility import (
    EllResult,
    HilbertBasis,
    ReducibilityWitness,
    decompose_into_irreducibles,
    ell_search,
    hilbert_basis,
    is_irreducible_leveler,
    is_reducible,
)
from .level_core import (
    CanonicalForm,
    KMatrix,
    Leveler,
    canonical_form,
    column_sums,
    complement,
    format_matrix,
    is_level,
    leveler_check,
    parse_matrix,
    stack,
)
from .polytope import (
    BasicFeasibleSolution,
    ConvexDecomposition,
    caratheodory_decompose,
    enumerate_bfs,
    polytope_dimension,
)

__version__ = "0.1.0"
