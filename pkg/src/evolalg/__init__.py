"""Exact toolkit for power-associative evolution algebras up to dimension 6."""

from .catalog import (
    CatalogLabel,
    canonical_algebra,
    emit_catalog,
    families_of_dim,
    family,
    make_label,
)
from .checks import (
    AnnihilatorChain,
    CheckReport,
    NilProfile,
    Witness,
    annihilator,
    annihilator_chain,
    is_associative,
    is_fourth_power_associative,
    is_jordan,
    is_nil,
    is_power_associative,
    nil_fourth_pa_criterion,
    nil_profile,
    u_layer_square_dim,
)
from .classify import (
    ClassificationResult,
    ParamsEquivalence,
    classify,
    monomial_isomorphism,
    params_equivalent,
    verify_isomorphism,
)
from .core import (
    EvolutionAlgebra,
    Subspace,
    associator,
    element,
    membership,
    multiply,
    new_evolution_algebra,
    power_subspace,
    principal_power,
    product_subspace,
    subspace_from_vectors,
)
from .decomp import (
    PeirceDecomposition,
    WedderburnDecomposition,
    decomposability_hint,
    extract_idempotent,
    graph_components,
    peirce,
    wedderburn,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    DivisionByZero,
    EvolalgError,
    FieldMismatch,
    ForbiddenCharacteristic,
    InternalConsistency,
    NonPrimeModulus,
    NotIdempotent,
    NotNil,
    NotPowerAssociative,
    ParamConstraintViolated,
    ParseError,
    ShapeError,
    UnknownLabel,
)
from .fields import (
    PrimeField,
    RationalField,
    field_from_string,
    make_field,
    scalar_arith,
    scalar_parse,
    scalar_serialize,
)

__version__ = "0.1.0"
