"""Exact and approximate solvers for finite-horizon warehouse trading.

A warehouse instance fixes per-period purchase, sale, and stock bounds,
linear payoffs, and fixed trading costs.  The solver enumerates candidate
stock levels, builds a layered network whose arcs carry extreme trade
decisions, and extracts a longest path; everything runs in exact rational
arithmetic.
"""

from .errors import (
    DeltaOutOfRange,
    EmptyInput,
    EpsilonOutOfRange,
    IndexOutOfRange,
    Infeasible,
    InvalidArgument,
    InvalidInstance,
    LowerExceedsUpper,
    NegativeBound,
    NoPositiveBounds,
    NonIntegralData,
    NotAPath,
    PeriodOutOfRange,
    TerminalStockMismatch,
    WarehouseError,
    WP3ShapeViolation,
    WrongVariant,
    WrongVectorLength,
)
from .extform import (
    LPModel,
    LPRow,
    LPVariable,
    build_extended_formulation,
    emit_lp,
    lift_and_check,
    lift_solution,
)
from .fptas import (
    BalancedFlow,
    FlowPair,
    FptasParams,
    balanced_flow_decompose,
    fptas_params,
    fptas_solve,
    normalize_terminal,
    reassemble,
    reduce_flow,
    scale_trade_bounds,
)
from .generators import (
    LotSizingInstance,
    gen_random,
    lotsizing_from_json_dict,
    lotsizing_to_json_dict,
    parse_lotsizing,
    reduce_lotsizing,
    reduce_partition,
    serialize_lotsizing,
    validate_lotsizing,
)
from .model import (
    Exact,
    FeasibilityReport,
    Instance,
    Solution,
    Variant,
    assemble_solution,
    check_solution,
    compute_objective,
    evaluate_payoff,
    exact,
    exact_vector,
    format_exact,
    instance_from_json_dict,
    instance_to_json_dict,
    parse_exact,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
    solution_from_json_dict,
    solution_to_json_dict,
    validate_instance,
)
from .network import (
    ArcDecision,
    LayeredNetwork,
    arc_candidates,
    build_network,
    solve,
    solve_with_network,
    solve_wp2_direct,
    to_dot,
)
from .oracle import oracle_solve
from .stocklevels import (
    DoubledHorizon,
    StockLevels,
    bound_S,
    double_horizon,
    gen_stock_levels,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
