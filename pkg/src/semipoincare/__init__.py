"""Poincare series, key sets and syzygies of positive cancellative semigroups."""

from .colored import ColorSet, chi_colored, colored_homology, dbar_decomposition, graph_series
from .errors import (
    BudgetError,
    ConsistencyError,
    EmptySupportError,
    ExpansionError,
    HypothesisError,
    InvalidComplexError,
    MembershipError,
    PositivityError,
    SaturationWarning,
    SemigroupError,
)
from .keysets import apery_single, compute_key_sets, supports
from .poincare import corollary_identity, numerator, oracle_series, verify_rational_form
from .resolution import betti_table, depth_report, structure_report, syzygy_series
from .semigroup import (
    AmbientGroup,
    ChoiceSet,
    SemigroupPresentation,
    ValidatedSemigroup,
    find_grading,
    realize_complex,
    validate,
)
from .series import Poly, RationalExpr, TruncatedSeries, expand
from .simplicial import Complex, build_Tm

__version__ = "0.1.0"
