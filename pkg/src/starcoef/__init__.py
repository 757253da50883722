"""Coefficient functionals of starlike univalent functions.

Taylor coefficients of starlike maps are generated from atomic Herglotz
measures; the package evaluates coefficient functionals, checks their
closed-form sharp bounds by fuzzing, and searches for extremal measures.
"""
from .caratheodory import (
    CaratheodoryCoefficients,
    HerglotzMeasure,
    check_positive_real_part,
    lemma22_extremal,
    measure_coefficients,
    moebius_coefficients,
    sample_measure,
)
from .extremal import SearchConfig, SearchResult, parameter_table, search
from .functionals import (
    BoundReport,
    FunctionalKind,
    FunctionalSpec,
    decomposition_rhs,
    elimination_bound_step,
    evaluate,
    theorem_bound,
)
from .kernels import BACKEND
from .series import TruncatedSeries
from .starlike import (
    SchlichtCoefficients,
    coefficients_from_caratheodory,
    from_measure,
    koebe_coefficients,
    closed_form_coefficients,
)

__version__ = "0.1.0"
