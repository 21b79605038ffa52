"""Entangled bases of small multipartite systems: construction,
verification, and numerical unextendibility certificates."""

from .hilbert import (
    ORTHO_TOL,
    RANK_TOL,
    Bipartition,
    Ket,
    Operator,
    SystemShape,
    all_bipartitions,
    apply_local,
    basis_ket,
    coefficient_matrix,
    density,
    gram_matrix,
    hermitian_eigenvalues,
    inner,
    kron,
    numerical_rank,
    orthonormal_complement,
    partial_trace,
    random_unit_ket,
    random_unitary,
    stack_amps,
)
from .entanglement import (
    CutRestricted,
    EntanglementCheck,
    GhzType,
    Predicate,
    SchmidtSpectrum,
    Strict,
    coords_to_ket,
    cut_residual,
    defect,
    defect_coords,
    defect_coords_batch,
    defect_gradient,
    is_maximally_entangled,
    predicate_cuts,
    predicate_label,
    schmidt_coefficients,
    schmidt_number,
)
from .constructions import (
    DecomposedVector,
    LabeledBasis,
    ProductTerm,
    basis_names,
    canonical_three_qubit,
    ghz3,
    lift_umeb,
    meb8,
    named_basis,
    pauli,
    umeb_2x3_type1,
    umeb_2x3_type2,
    umeb_2x3x3_first,
    umeb_2x3x3_second,
    xy_vectors,
)
from .verify import (
    CAVEATS,
    BasisReport,
    CompletenessCheck,
    MubReport,
    OrthonormalityCheck,
    PredicateReport,
    SearchConfig,
    UnextendibilityResult,
    check_completeness,
    check_orthonormal,
    full_report,
    minimize_on_sphere,
    mub_overlap,
    set_match_distance,
    unextendibility_search,
)

__version__ = "0.1.0"

__all__ = [
    "ORTHO_TOL",
    "RANK_TOL",
    "Bipartition",
    "Ket",
    "Operator",
    "SystemShape",
    "all_bipartitions",
    "apply_local",
    "basis_ket",
    "coefficient_matrix",
    "density",
    "gram_matrix",
    "hermitian_eigenvalues",
    "inner",
    "kron",
    "numerical_rank",
    "orthonormal_complement",
    "partial_trace",
    "random_unit_ket",
    "random_unitary",
    "stack_amps",
    "CutRestricted",
    "EntanglementCheck",
    "GhzType",
    "Predicate",
    "SchmidtSpectrum",
    "Strict",
    "coords_to_ket",
    "cut_residual",
    "defect",
    "defect_coords",
    "defect_coords_batch",
    "defect_gradient",
    "is_maximally_entangled",
    "predicate_cuts",
    "predicate_label",
    "schmidt_coefficients",
    "schmidt_number",
    "DecomposedVector",
    "LabeledBasis",
    "ProductTerm",
    "basis_names",
    "canonical_three_qubit",
    "ghz3",
    "lift_umeb",
    "meb8",
    "named_basis",
    "pauli",
    "umeb_2x3_type1",
    "umeb_2x3_type2",
    "umeb_2x3x3_first",
    "umeb_2x3x3_second",
    "xy_vectors",
    "CAVEATS",
    "BasisReport",
    "CompletenessCheck",
    "MubReport",
    "OrthonormalityCheck",
    "PredicateReport",
    "SearchConfig",
    "UnextendibilityResult",
    "check_completeness",
    "check_orthonormal",
    "full_report",
    "minimize_on_sphere",
    "mub_overlap",
    "set_match_distance",
    "unextendibility_search",
]
