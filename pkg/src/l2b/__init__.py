"""Exact-arithmetic verification kernel for two-term Lie theory."""

__version__ = "0.1.0"

from .exact import Rational, SparseTensor, alternate, contract, koszul_sign
from .liecore import (
    Check,
    LieAlgebra,
    LieCobracket,
    Representation,
    VerificationReport,
    Witness,
    adjoint_rep,
    bracket_to_dual_cobracket,
    cobracket_to_dual_lie,
    semidirect,
    verify_cocycle,
    verify_lie,
    verify_rep,
)
from .twoterm import (
    CrossedModuleData,
    SpaceDescriptor,
    SplitDvb,
    TwoVectorSpace,
    WeakLie2Data,
    check_duality_identity,
    derived_bracket,
    dual_two_vs,
    dvb_flip,
    dvb_horizontal_dual,
    dvb_vertical_dual,
    g_action_algebroid,
    gamma_total,
    verify_cm,
    verify_full_crossed_module,
)
from .weil import (
    GerstenhaberStructure,
    GradedDerivation,
    WeilElement,
    WeilMonomial,
    apply_derivation,
    build_delta_h,
    build_delta_j,
    build_delta_v,
    build_gerstenhaber,
    check_derivation_of_bracket,
    check_gerst_axioms,
    check_square_zero,
    gerst_bracket,
    graded_commutator,
    verify_cm_via_weil,
    verify_weak_lie2,
    weil_mul,
)
from .bicross import (
    Lie2BialgebraData,
    MatchedPairData,
    abelian_dual_pair,
    bicrossed_sum,
    cross_check,
    dual_action_core,
    dual_action_side,
    verify_l2b_def,
    verify_l2b_matched,
    verify_l2b_weil,
    verify_matched_pair,
)
