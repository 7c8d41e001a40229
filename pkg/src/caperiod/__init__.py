"""Exact and statistical tools for periodic behaviour of one-dimensional cellular automata."""

from .config import (
    BudgetExceeded,
    EventualPeriod,
    PeriodicConfig,
    TwoSidedConfig,
    canonicalize,
    equals,
    format_config,
    is_spatially_periodic,
    parse_config,
    shift_by,
    step,
    window,
)
from .debruijn import is_injective, is_surjective, preimage_count
from .dynamics import column_period, eventual_period, orbit, orbit_cycle, trace
from .equicontinuity import (
    BlockingBounds,
    certify_blocking,
    check_blocking,
    classify_kurka,
    equicontinuity_period,
    find_blocking_words,
    verify_certificate,
)
from .factors import PeriodicFactor, build_periodic_factor, verify_factor
from .fixtures import example1, example2
from .gilman import GilmanParams, MeasureSpec, classify_gilman, estimate_ratio
from .rules import (
    Alphabet,
    CellularAutomaton,
    Neighborhood,
    apply_block,
    apply_local,
    elementary,
    load_rule,
    parse_rule,
    shift_rule,
)
from .stp import StpBounds, construct_stp, search_stp, verify_stp

__version__ = "0.1.0"
