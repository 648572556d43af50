"""Star products of functions on finite groups and SU(2).

Unitary irreducible representations supply quantizer/dequantizer pairs;
operators map to complex functions on the group and back, and the operator
product induces associative star products whose structure constants are
character tensors.
"""

from .groups import (
    BUILTIN_GROUPS,
    GroupTable,
    NotAGroup,
    build_group,
    builtin_group,
    conjugacy_classes,
    group_from_doc,
    group_to_doc,
    relabel_by_shift,
)
from .identities import (
    CHARACTER_CHECKS,
    C3vLieReport,
    IdentityReport,
    Q8D4Report,
    abelian_condition,
    c3v_lie_relations,
    check_compatibility,
    jacobi_residual,
    projection_property,
    q8_d4_coincidence,
    standard_checks,
    verify_associativity,
    verify_character_identity,
    verify_closure,
    verify_roundtrip,
)
from .representations import (
    CharacterTable,
    Irrep,
    UnknownLabel,
    ValidationReport,
    builtin_irrep,
    builtin_irreps,
    character,
    character_table,
    irrep_from_doc,
    irrep_labels,
    irrep_to_doc,
    validate_irrep,
)
from .star import (
    OrthogonalityViolation,
    QuantizerPair,
    StarKernel,
    algebra_structure_constants,
    associativity_residual,
    custom_pair,
    function_from_doc,
    function_to_doc,
    jordan_kernel,
    k_deformed_kernel,
    kernel_from_doc,
    kernel_to_doc,
    lie_kernel,
    pair_overlap_matrix,
    quantizer_pair,
    reconstruct,
    reconstruction_residual,
    reference_kernels,
    star_apply,
    star_kernel,
    symbol,
)
from .su2 import (
    MIN_NODES,
    SU2_IDENTITY,
    VOLUME,
    HaarGrid,
    SU2Element,
    haar_grid,
    haar_orthogonality_residual,
    lie_kernel_expansion,
    samples_from_doc,
    samples_to_doc,
    su2_element,
    su2_kernel,
    su2_lie_kernel,
    su2_reconstruct,
    su2_star,
    su2_symbol,
    su2_symbol_samples,
)

__version__ = "0.1.0"
