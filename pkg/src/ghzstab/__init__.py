"""Two-observable stabilization of N-qubit GHZ states.

Decide whether a product spin observable and the all-Z observable share a
unique common +1 eigenstate, recover the stabilized state(s), construct a
uniquely-stabilizing pair for any GHZ-class target, and simulate the
two-setting measurement certification protocol. Every solver result can be
cross-checked against an independent brute-force oracle.
"""

from .angles import PI, Angle, DirectionList
from .bitstrings import BitString, ParityClasses, parity_classes
from .certify import (
    CertificationConfig,
    CertReport,
    Ensemble,
    expectation,
    joint_outcome_probabilities,
    measure_round,
    run_certification,
    sequential_outcome_probabilities,
)
from .classify import (
    ClassificationReport,
    SignPatternSet,
    StabilizerCase,
    classify,
    pattern_condition,
    sector_transform,
    sign_pattern_set,
    signed_angle_sum,
)
from .construct import (
    DegenerateBasisReport,
    GHZSpec,
    LocalPhaseBasis,
    StabilizingPair,
    bitstring_phase,
    canonical_angles,
    degenerate_ghz_candidates,
    ghz_from_pattern,
    local_phase_basis,
    stabilizing_pair_for,
)
from .errors import (
    DomainError,
    GhzstabError,
    InternalConsistencyError,
    PreconditionError,
    ShapeError,
    SizeError,
)
from .linalg import (
    MAX_DIM,
    Operator,
    StateVector,
    SubspaceBasis,
    fidelity,
    kron,
    kron_all,
    null_space,
    subspace_distance,
)
from .observables import (
    ProductObservable,
    canonical_stabilizer_generators,
    local_observable,
    product_observable,
    sigma_z_product,
    spin_down_eigenvector,
    spin_up_eigenvector,
    stabilizer_dimension,
)
from .solve import (
    EvenParityBlock,
    PurificationModel,
    PurityReport,
    StabilizerReport,
    brute_force_eigenspace,
    character_sum,
    character_sum_check,
    even_parity_block,
    odd_parity_contraction_residual,
    purification_model,
    purity_security_check,
    sector_dimensions,
    solve_common_eigenspace,
    trig_parity_identity_residuals,
)

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "BitString",
    "CertReport",
    "CertificationConfig",
    "ClassificationReport",
    "DegenerateBasisReport",
    "DirectionList",
    "DomainError",
    "Ensemble",
    "EvenParityBlock",
    "GHZSpec",
    "GhzstabError",
    "InternalConsistencyError",
    "LocalPhaseBasis",
    "MAX_DIM",
    "Operator",
    "PI",
    "ParityClasses",
    "PreconditionError",
    "ProductObservable",
    "PurificationModel",
    "PurityReport",
    "ShapeError",
    "SignPatternSet",
    "SizeError",
    "StabilizerCase",
    "StabilizerReport",
    "StabilizingPair",
    "StateVector",
    "SubspaceBasis",
    "bitstring_phase",
    "brute_force_eigenspace",
    "canonical_angles",
    "canonical_stabilizer_generators",
    "character_sum",
    "character_sum_check",
    "classify",
    "degenerate_ghz_candidates",
    "even_parity_block",
    "expectation",
    "fidelity",
    "ghz_from_pattern",
    "joint_outcome_probabilities",
    "kron",
    "kron_all",
    "local_observable",
    "local_phase_basis",
    "measure_round",
    "null_space",
    "odd_parity_contraction_residual",
    "parity_classes",
    "pattern_condition",
    "product_observable",
    "purification_model",
    "purity_security_check",
    "run_certification",
    "sector_dimensions",
    "sector_transform",
    "sequential_outcome_probabilities",
    "sigma_z_product",
    "sign_pattern_set",
    "signed_angle_sum",
    "solve_common_eigenspace",
    "spin_down_eigenvector",
    "spin_up_eigenvector",
    "stabilizer_dimension",
    "stabilizing_pair_for",
    "subspace_distance",
    "trig_parity_identity_residuals",
]
