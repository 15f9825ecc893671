"""Exact, desk-scale lattice problems: bases, reduction, SVP/CVP family solvers,
q-ary and ideal lattices, LWE/SIS toys and executable inter-problem relations."""
from .core import (
    Basis,
    NormKind,
    determinant,
    gram_schmidt,
    hermite_normal_form,
    is_lll_reduced,
    is_member,
    lattice_equal,
    lll_reduce,
    lll_with_transform,
    random_unimodular,
    unimodular_randomize,
    vector_norm,
)
from .errors import (
    DegenerateBasisError,
    DimensionError,
    InvalidParameterError,
    LatticeError,
    OracleError,
    ResourceLimitError,
)
from .exact import (
    PromiseDecision,
    SolutionCertificate,
    bdd_solve,
    covering_radius_estimate,
    cvp_exact,
    decide_crp,
    decide_gap_cvp,
    decide_gap_svp,
    minkowski_holds,
    sbp_bruteforce,
    sivp_solve,
    slp_bounds,
    successive_minima,
    svp_approx,
    svp_exact,
    usvp_solve,
)
from .approx import babai_error_bound, babai_round_cvp, cvp_approx, hermite_svp, svp_via_cvp_oracle
from .modular import (
    IdealRing,
    IdealSisInstance,
    LweInstance,
    NoiseSpec,
    QaryMatrix,
    SisInstance,
    ajtai_hash,
    birthday_collision,
    collision_to_short_vector,
    ideal_basis_from_generator,
    ideal_sis_solve,
    ideal_svp_solve,
    lwe_gen,
    lwe_solve_bruteforce,
    qary_dual_basis,
    qary_primal_basis,
    sis_gen,
    sis_solve,
    sis_verify,
)
from .reductions import (
    ajtai_regime,
    gap_cvp_from_search,
    verify_sbp_sivp_relation,
    verify_svp_cvp_relation,
    verify_usvp_bdd_chain,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "DegenerateBasisError",
    "DimensionError",
    "IdealRing",
    "IdealSisInstance",
    "InvalidParameterError",
    "LatticeError",
    "LweInstance",
    "NoiseSpec",
    "NormKind",
    "OracleError",
    "PromiseDecision",
    "QaryMatrix",
    "ResourceLimitError",
    "SisInstance",
    "SolutionCertificate",
    "ajtai_hash",
    "ajtai_regime",
    "babai_error_bound",
    "babai_round_cvp",
    "bdd_solve",
    "birthday_collision",
    "collision_to_short_vector",
    "covering_radius_estimate",
    "cvp_approx",
    "cvp_exact",
    "decide_crp",
    "decide_gap_cvp",
    "decide_gap_svp",
    "determinant",
    "gap_cvp_from_search",
    "gram_schmidt",
    "hermite_normal_form",
    "hermite_svp",
    "ideal_basis_from_generator",
    "ideal_sis_solve",
    "ideal_svp_solve",
    "is_lll_reduced",
    "is_member",
    "lattice_equal",
    "lll_reduce",
    "lll_with_transform",
    "lwe_gen",
    "lwe_solve_bruteforce",
    "minkowski_holds",
    "qary_dual_basis",
    "qary_primal_basis",
    "random_unimodular",
    "sbp_bruteforce",
    "sis_gen",
    "sis_solve",
    "sis_verify",
    "sivp_solve",
    "slp_bounds",
    "successive_minima",
    "svp_approx",
    "svp_exact",
    "svp_via_cvp_oracle",
    "unimodular_randomize",
    "usvp_solve",
    "vector_norm",
    "verify_sbp_sivp_relation",
    "verify_svp_cvp_relation",
    "verify_usvp_bdd_chain",
]
