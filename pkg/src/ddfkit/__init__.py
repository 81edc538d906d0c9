"""Disjoint (v, k, k-1) difference families: constructions and verification.

The library builds difference families whose blocks partition the
non-zero elements of a finite group, via fixed-point-free automorphism
orbits, several explicit algebraic constructions, and recursive
composition along normal series; everything is re-verified by exhaustive
difference census before being returned.
"""

from .algebra import (
    Field,
    Matrix2,
    PisanoData,
    element_of_multiplicative_order,
    factorize,
    is_prime,
    is_prime_power,
    kth_roots_of_unity,
    matrix_order,
    matrix_power,
    pisano_data,
    pisano_period,
    prime_power_factors,
    smallest_prime_factor,
    unit_order,
)
from .composition import (
    ExtensionData,
    chain_from_subgroups,
    compose_ddf,
    ddf_for_group,
    standard_chain,
)
from .constructions import (
    complete_to_pdf,
    cyclic_abelian_ddf,
    cyclic_abelian_pair,
    ea_product_ddf,
    ea_product_pair,
    field_additive_group,
    heisenberg_ddf,
    heisenberg_pair,
    partition_labels,
    patterned_starter,
    pisano_ddf,
    pisano_pair,
    q4_order3_ddf,
    q4_order3_pair,
    roots_of_unity_ddf,
    starter_pair,
)
from .errors import (
    BadChain,
    CongruenceViolation,
    DdfError,
    DivisibleByThree,
    DoesNotDivide,
    EvenOrder,
    EvenOrderU,
    FiveExcluded,
    IndexNotPrime,
    InputNotDF,
    InvalidElement,
    NotAUnit,
    NotNormal,
    NotSemiregular,
    NotSpanning,
    NotUnitCondition,
    PairingFailure,
    RequiresAbelianOddOrder,
    SmallPrimeFactor,
    TooLarge,
    VerificationFailed,
)
from .ferrero import (
    Automorphism,
    DiffFamily,
    ExplicitAuto,
    FerreroPair,
    HeisenbergUnit,
    MatrixAuto,
    UnitMul,
    feasible_parameters,
    ferrero_ddf,
    identity_automorphism,
    is_fixed_point_free,
    orbits,
    split_ddf,
    split_family,
)
from .groups import (
    AbelianProduct,
    CayleyGroup,
    Element,
    Group,
    HeisenbergGroup,
    Subgroup,
    enumeration_bound,
    group_from_json,
    group_to_json,
    is_normal_subgroup,
)
from .verify import (
    Design,
    FamilyReport,
    check_difference_family,
    difference_multiset,
    expand_to_nrb,
    fibers,
    is_difference_family,
    is_disjoint,
    is_partition_of_nonzero,
    verify_2_design,
    verify_near_resolution,
    zdbf_check,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianProduct",
    "Automorphism",
    "BadChain",
    "CayleyGroup",
    "CongruenceViolation",
    "DdfError",
    "Design",
    "DiffFamily",
    "DivisibleByThree",
    "DoesNotDivide",
    "Element",
    "EvenOrder",
    "EvenOrderU",
    "ExplicitAuto",
    "ExtensionData",
    "FamilyReport",
    "FerreroPair",
    "Field",
    "FiveExcluded",
    "Group",
    "HeisenbergGroup",
    "HeisenbergUnit",
    "IndexNotPrime",
    "InputNotDF",
    "InvalidElement",
    "Matrix2",
    "MatrixAuto",
    "NotAUnit",
    "NotNormal",
    "NotSemiregular",
    "NotSpanning",
    "NotUnitCondition",
    "PairingFailure",
    "PisanoData",
    "RequiresAbelianOddOrder",
    "SmallPrimeFactor",
    "Subgroup",
    "TooLarge",
    "UnitMul",
    "VerificationFailed",
    "chain_from_subgroups",
    "check_difference_family",
    "complete_to_pdf",
    "compose_ddf",
    "cyclic_abelian_ddf",
    "cyclic_abelian_pair",
    "ddf_for_group",
    "difference_multiset",
    "ea_product_ddf",
    "ea_product_pair",
    "element_of_multiplicative_order",
    "enumeration_bound",
    "expand_to_nrb",
    "factorize",
    "feasible_parameters",
    "ferrero_ddf",
    "fibers",
    "field_additive_group",
    "group_from_json",
    "group_to_json",
    "heisenberg_ddf",
    "heisenberg_pair",
    "identity_automorphism",
    "is_difference_family",
    "is_disjoint",
    "is_fixed_point_free",
    "is_normal_subgroup",
    "is_partition_of_nonzero",
    "is_prime",
    "is_prime_power",
    "kth_roots_of_unity",
    "matrix_order",
    "matrix_power",
    "orbits",
    "partition_labels",
    "patterned_starter",
    "pisano_data",
    "pisano_ddf",
    "pisano_pair",
    "pisano_period",
    "prime_power_factors",
    "q4_order3_ddf",
    "q4_order3_pair",
    "roots_of_unity_ddf",
    "smallest_prime_factor",
    "split_ddf",
    "split_family",
    "standard_chain",
    "starter_pair",
    "unit_order",
    "verify_2_design",
    "verify_near_resolution",
    "zdbf_check",
]
