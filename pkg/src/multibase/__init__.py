"""Expansions of real numbers in alphabet-base systems.

An alphabet-base system pairs digit values ``d_j`` with bases ``q_j > 1``;
a digit sequence ``j_1 j_2 ...`` represents
``sum_i d_{j_i} / (q_{j_1} ... q_{j_i})``.  The package computes greedy,
lazy and quasi variants of expansions, tests sequences lexicographically,
decides uniqueness, and classifies how many points have a unique expansion.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .classification import (
    Classification,
    PreconditionError,
    UniquenessClass,
    classical_system,
    classify,
    classify_two_element,
    q_gr,
    q_gr_exact,
    q_kl,
    two_element_special,
)
from .expansion import (
    CheckResult,
    ExpansionKind,
    ExpansionState,
    NotRegularError,
    OutOfRangeError,
    Verdict,
    alpha_j,
    expand,
    extended_expand,
    gamma_j,
    is_unique,
    quasi_greedy_rewrite,
    quasi_lazy_rewrite,
    unique_point_test,
    validate,
)
from .numerics import (
    Interval,
    Ordering,
    Quadratic,
    Scalar,
    UndeterminedError,
    compare,
    format_scalar,
    parse_scalar,
    sqrt_interval,
)
from .oracle import census_unique, enumerate_expansions, verify_extremal
from .sequences import (
    DigitSequence,
    alpha_gr,
    alpha_kl,
    format_sequence,
    lex_compare,
    parse_sequence,
    reflect,
    thue_morse_truncated,
)
from .system import AlphabetBaseSystem, SystemSummary, load_system, pi_eval

__all__ = [name for name in dir() if not name.startswith("_")]
