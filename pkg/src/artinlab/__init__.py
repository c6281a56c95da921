"""artinlab: exact solvability analysis of finite-dimensional quotient
algebras K[x_1..x_n]/I over the rationals.

The toolkit decides the solvability-related invariants of such algebras:
the generator-count (Schulze) criterion, narrowness of the associated
graded algebra, extremality, decomposition into local factors, the
derivation Lie algebra Der S with solvability / nilpotency / unipotence
tests, socle dimension bounds, and moduli (Tjurina) algebras of isolated
hypersurface singularities.

All arithmetic is exact rational; ranks and dimensions are invariant
under field extension, so every verdict agrees with the corresponding
statement over an algebraically closed field whenever the input is
rational (rational point finding is the one documented exception).
"""

from .artin import (
    ArtinAlgebra,
    GradedAlgebra,
    SocleData,
    annihilator,
    associated_graded,
    decompose_local,
    from_groebner,
    minimal_generator_count,
    socle_data,
    tensor_product,
)
from .criteria import (
    CriteriaReport,
    complete_intersection_check,
    evaluate_ideal,
    global_schulze,
    ideal_order,
    narrow_test,
    schulze_test,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    is_finite_dimensional,
    local_component,
    min_power_of_maximal_inside,
    normal_form,
    quotient_dimension,
    rational_points,
    standard_monomials,
)
from .liealg import (
    LieAlgebraRep,
    SeriesReport,
    all_nilpotent,
    compute_derivations,
    series,
    socle_bound_check,
    unipotent_subgroup_dim,
)
from .linalg import Matrix, Rational, Subspace, kernel_basis, rank, rref
from .poly import MonomialOrder, Polynomial, VarSet, parse, weighted_degree
from .singular import (
    ModuliAlgebra,
    SplitResult,
    jacobian_ideal,
    moduli_algebra,
    quasi_homogeneous_weights,
    splitting_normal_form,
    yau_report,
)

__version__ = "0.1.0"

__all__ = [
    "ArtinAlgebra",
    "CriteriaReport",
    "GradedAlgebra",
    "GroebnerBasis",
    "Ideal",
    "LieAlgebraRep",
    "Matrix",
    "ModuliAlgebra",
    "MonomialOrder",
    "Polynomial",
    "Rational",
    "SeriesReport",
    "SocleData",
    "SplitResult",
    "Subspace",
    "VarSet",
    "all_nilpotent",
    "annihilator",
    "associated_graded",
    "buchberger",
    "complete_intersection_check",
    "compute_derivations",
    "decompose_local",
    "evaluate_ideal",
    "from_groebner",
    "global_schulze",
    "ideal_order",
    "is_finite_dimensional",
    "jacobian_ideal",
    "kernel_basis",
    "local_component",
    "min_power_of_maximal_inside",
    "minimal_generator_count",
    "moduli_algebra",
    "narrow_test",
    "normal_form",
    "parse",
    "quasi_homogeneous_weights",
    "quotient_dimension",
    "rank",
    "rational_points",
    "rref",
    "schulze_test",
    "series",
    "socle_bound_check",
    "socle_data",
    "splitting_normal_form",
    "standard_monomials",
    "tensor_product",
    "unipotent_subgroup_dim",
    "weighted_degree",
    "yau_report",
]
