"""flagcoh: exact cohomology of Schur bundles on partial flag varieties,
exceptional-collection checks, twisted-form descent analysis, and
line-bundle grids on toric projective-bundle towers."""

from .cohomology import (
    E1_BOUND,
    EXACT,
    CohomologyOutcome,
    cohomology,
    cohomology_graded,
    cohomology_stepwise,
    euler_characteristic,
    ext_groups,
    ext_groups_best,
    pushforward_grassmann,
)
from .flagvar import (
    BLOCK,
    QUOT,
    SUB,
    BundleExpr,
    FlagShape,
    GradedMonomial,
    SchurMonomial,
    Slot,
    dual,
    graded_expansion,
    make_monomial,
    minimal_base,
    sigma_pullback,
    tensor,
    trivial,
)
from .kapranov import (
    Collection,
    PairReport,
    PairVerdict,
    check_strong_exceptional,
    enumerate_collection,
    hom_quiver,
)
from .schur import CharacterSum, lr_coefficients, schur_dim, tensor_schur
from .toric import (
    TowerSpec,
    check_grid_collection,
    galois_orbit_check,
    line_bundle_cohomology,
)
from .twists import (
    INNER_ONLY,
    WITH_SIGMA,
    DescentReport,
    TwistGroup,
    check_T2,
    counterexample_case,
    orbit_sum,
)
from .weights import BBWResolution, bbw_resolve, dot_action, dual_weight, rho

__version__ = "0.1.0"

__all__ = [
    "BBWResolution",
    "BLOCK",
    "QUOT",
    "SUB",
    "BundleExpr",
    "CharacterSum",
    "CohomologyOutcome",
    "Collection",
    "DescentReport",
    "E1_BOUND",
    "EXACT",
    "FlagShape",
    "GradedMonomial",
    "INNER_ONLY",
    "PairReport",
    "PairVerdict",
    "SchurMonomial",
    "Slot",
    "TowerSpec",
    "TwistGroup",
    "WITH_SIGMA",
    "bbw_resolve",
    "check_T2",
    "check_grid_collection",
    "check_strong_exceptional",
    "cohomology",
    "cohomology_graded",
    "cohomology_stepwise",
    "counterexample_case",
    "dot_action",
    "dual",
    "dual_weight",
    "enumerate_collection",
    "euler_characteristic",
    "ext_groups",
    "ext_groups_best",
    "galois_orbit_check",
    "graded_expansion",
    "hom_quiver",
    "line_bundle_cohomology",
    "lr_coefficients",
    "make_monomial",
    "minimal_base",
    "orbit_sum",
    "pushforward_grassmann",
    "rho",
    "schur_dim",
    "sigma_pullback",
    "tensor",
    "tensor_schur",
    "trivial",
]
