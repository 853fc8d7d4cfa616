"""Exact piecewise-linear reparametrizations of the unit interval with prescribed stop data."""
from .exactnum import (
    ClosedInterval,
    DyadicLevel,
    Order,
    as_rational,
    dyadic_level,
    format_rational,
    interval_order,
    parse_rational,
    simplest_rational_in,
)
from .stopdata import (
    Accumulation,
    ConditionReport,
    DegenerateInterval,
    GeneratorStopFamily,
    InconsistentDeclaration,
    OverlapError,
    Side,
    StopFamily,
    StopMap,
    Verdict,
    VerdictKind,
    check_conditions,
    check_conditions_lazy,
    make_stop_family,
    rational_witnesses,
)
from .construct import (
    DegeneratePoint,
    DyadicAssignment,
    DyadicDepthExceeded,
    FullIntervalFamily,
    InvalidStopMap,
    OracleUndecided,
    OutOfDomain,
    PLReparam,
    RealInterval,
    approximants,
    build_from_stopmap,
    compose_reparams,
    dyadic_assignment,
    dyadic_build,
    evaluate,
    evaluate_lazy,
    phi_k,
    stop_data_of_reparam,
    sup_distance,
)
from .pathreg import (
    DimensionMismatch,
    PLPath,
    compose,
    is_regular,
    paths_equal,
    regularize,
    stop_intervals_of_path,
)

__version__ = "0.1.0"
