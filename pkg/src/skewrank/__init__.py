"""Exact constant-rank analysis of alternating forms over field extensions."""

__version__ = "0.1.0"

from .cyclotomic import (
    CycloElement,
    Section6Report,
    TernaryForm,
    degeneracy_coefficient,
    diagonalize_ternary,
    gram_rational,
    isotropic_witness,
    legendre_solvable,
    verify_section6,
)
from .decomposition import (
    ComponentCheck,
    ComponentReport,
    OracleReport,
    TheoremReport,
    build_component,
    find_nondegenerate_b,
    oracle_survey,
    remark_C_check,
    theorem_A_subspaces,
    verify_corollary_odd_order,
    verify_direct_sum,
    verify_theorem_A,
    verify_theorem_C,
)
from .errors import SkewrankError
from .fields import ExtensionContext, FieldElement, find_irreducible
from .forms import (
    DegeneracyWitness,
    GramMatrix,
    degeneracy_witness,
    gram,
    is_degenerate_by_norm,
    predicted_rank,
    rank,
)
from .galois import SubspaceSpec, eigenspace, fixed_field_basis, order_of, sigma_matrix

__all__ = [
    "ComponentCheck",
    "ComponentReport",
    "CycloElement",
    "DegeneracyWitness",
    "ExtensionContext",
    "FieldElement",
    "GramMatrix",
    "OracleReport",
    "Section6Report",
    "SkewrankError",
    "SubspaceSpec",
    "TernaryForm",
    "TheoremReport",
    "build_component",
    "degeneracy_coefficient",
    "degeneracy_witness",
    "diagonalize_ternary",
    "eigenspace",
    "find_irreducible",
    "find_nondegenerate_b",
    "fixed_field_basis",
    "gram",
    "gram_rational",
    "is_degenerate_by_norm",
    "isotropic_witness",
    "legendre_solvable",
    "oracle_survey",
    "order_of",
    "predicted_rank",
    "rank",
    "remark_C_check",
    "sigma_matrix",
    "theorem_A_subspaces",
    "verify_corollary_odd_order",
    "verify_direct_sum",
    "verify_section6",
    "verify_theorem_A",
    "verify_theorem_C",
]
