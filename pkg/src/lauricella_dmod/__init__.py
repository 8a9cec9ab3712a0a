"""Exact computer algebra for Lauricella hypergeometric D-module systems.

Weyl-algebra arithmetic, Buchberger-criterion checks under global, weight
and local orders, characteristic-variety generators, singular-locus
determinants and truncated-series annihilation checks.
"""

from .charvar import CharVarGens, char_gens, gens_equal_modulo_rename, printed_gens
from .families import FAMILIES, FamilySpec, make_operator, operator_family, theta_expr
from .groebner import (
    GBReport,
    ReductionTrace,
    Status,
    buchberger_check,
    coprime_shortcut,
    reduce,
    s_pair,
)
from .kernels import BACKEND
from .orders import (
    GLOBAL01,
    LOCAL01,
    OrderSpec,
    compare,
    initial_form_01,
    initial_term,
    weight_cone_contains,
    weight_order,
)
from .polyalg import (
    RATIONALS,
    CPoly,
    NotDivisible,
    PolyMatrix,
    PolyRing,
    RingMismatchError,
    det_bareiss,
    det_cofactor,
    det_fraction_free,
    exact_divide,
    param_domain,
    xxi_ring,
)
from .series import (
    ParamValues,
    TruncSeries,
    apply_operator,
    build_series,
    pochhammer,
    recurrence_oracle,
    verify_annihilation,
)
from .singlocus import (
    SingularLocusResult,
    UnsupportedBranch,
    closed_form_sing,
    epsilon_det,
    epsilon_matrix,
    match_factors,
    recurrence_check,
    sing_product,
    singular_locus,
)
from .weyl import WeylAlgebra, WeylOp, apply_to_monomial, commutator, euler_expand, weyl_algebra, weyl_mul

__version__ = "0.1.0"
