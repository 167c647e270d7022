"""Approximation machinery: balanced flow pairing, flow reduction, terminal
normalization, and the bound-scaling approximation scheme.

A plan whose final stock returns to s0 moves every purchased unit to some
later sale (or covers an earlier sale from stock).  balanced_flow_decompose
makes that explicit as purchase/sale pairs, reduce_flow shrinks one pair
while keeping the plan feasible, and fptas_solve exploits both: rounding
the trade bounds down to multiples of K = epsilon * U_min keeps some plan
worth at least (1 - epsilon) of the optimum inside the scaled instance,
which the exact solver then finds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DeltaOutOfRange,
    EpsilonOutOfRange,
    IndexOutOfRange,
    NoPositiveBounds,
    TerminalStockMismatch,
    WrongVariant,
)
from .model import (
    Exact,
    Instance,
    Solution,
    Variant,
    assemble_solution,
    exact,
    validate_instance,
)
from .network import solve

FlowPair = tuple  # (purchase period, sale period, amount), periods 1-based


@dataclass(frozen=True)
class BalancedFlow:
    """Pairing of purchase amounts with the sales they feed.

    A pair (t, t', amount) moves `amount` units bought in period t to a sale
    in period t'.  Forward pairs have t < t' (buy now, sell later); backward
    pairs have t' < t (sell from stock now, buy back later).  Amounts are
    positive and conserve each period's totals exactly.
    """

    pairs: tuple[FlowPair, ...]


def balanced_flow_decompose(inst: Instance, sol: Solution) -> BalancedFlow:
    """Pair off purchases and sales of a plan whose stock returns to s0.

    Walks periods in order: each purchase drains against the earliest later
    unmatched sale, then each sale drains against the earliest later
    unmatched purchase.  Requires s_T = s0 (equal totals); raises
    TerminalStockMismatch otherwise.
    """
    if sol.s[-1] != inst.s0:
        raise TerminalStockMismatch(
            f"final stock {sol.s[-1]} differs from initial stock {inst.s0}"
        )
    x = list(sol.x)
    y = list(sol.y)
    pairs: list[FlowPair] = []
    for t in range(1, inst.T + 1):
        while x[t - 1] > 0:
            sale = next(
                (u for u in range(t + 1, inst.T + 1) if y[u - 1] > 0), None
            )
            if sale is None:
                raise TerminalStockMismatch(
                    f"purchase in period {t} has no later sale to feed"
                )
            amount = min(x[t - 1], y[sale - 1])
            pairs.append((t, sale, amount))
            x[t - 1] -= amount
            y[sale - 1] -= amount
        while y[t - 1] > 0:
            buy = next(
                (u for u in range(t + 1, inst.T + 1) if x[u - 1] > 0), None
            )
            if buy is None:
                raise TerminalStockMismatch(
                    f"sale in period {t} has no later purchase covering it"
                )
            amount = min(x[buy - 1], y[t - 1])
            pairs.append((buy, t, amount))
            x[buy - 1] -= amount
            y[t - 1] -= amount
    return BalancedFlow(pairs=tuple(pairs))


def reassemble(inst: Instance, flow: BalancedFlow) -> Solution:
    """Rebuild a plan from flow pairs (minimal indicators, fresh objective)."""
    x = [0] * inst.T
    y = [0] * inst.T
    for buy, sale, amount in flow.pairs:
        x[buy - 1] += amount
        y[sale - 1] += amount
    return assemble_solution(inst, x, y)


def reduce_flow(
    inst: Instance, sol: Solution, flow: BalancedFlow, index: int, delta
) -> Solution:
    """Shrink one flow pair by delta and return the adjusted plan.

    The purchase and the sale of the pair both drop by delta; stocks between
    them move toward s0 by delta (down across a forward pair, up across a
    backward pair).  Feasibility is preserved for any plan the pairing came
    from.  Indicators are re-derived minimally and the objective recomputed.
    """
    delta = exact(delta)
    if not 0 <= index < len(flow.pairs):
        raise IndexOutOfRange(
            f"pair index {index} outside 0..{len(flow.pairs) - 1}"
        )
    buy, sale, amount = flow.pairs[index]
    if not 0 <= delta <= amount:
        raise DeltaOutOfRange(f"delta {delta} outside [0, {amount}]")
    x = list(sol.x)
    y = list(sol.y)
    x[buy - 1] -= delta
    y[sale - 1] -= delta
    return assemble_solution(inst, x, y)


def normalize_terminal(inst: Instance) -> Instance:
    """Append a free settling period that pins the final stock to s0.

    The new period T+1 has zero payoff coefficients and no fixed costs, its
    stock bounds are [s0, s0], and its trade bounds are wide enough to move
    any reachable stock back to s0 at zero payoff.  Corresponding plans of
    the two instances carry equal objectives.
    """
    if inst.variant is not Variant.WP3:
        raise WrongVariant("normalize_terminal applies to wp3 instances only")
    span = inst.Us[-1]
    return Instance(
        variant=Variant.WP3,
        T=inst.T + 1,
        s0=inst.s0,
        Ls=inst.Ls + (inst.s0,),
        Us=inst.Us + (inst.s0,),
        Lx=inst.Lx + (0,),
        Ux=inst.Ux + (span,),
        Ly=inst.Ly + (0,),
        Uy=inst.Uy + (span,),
        revenue=inst.revenue + (0,),
        cost=inst.cost + (0,),
        holding=inst.holding + (0,),
        fixed_purchase=inst.fixed_purchase + (0,),
        fixed_sale=inst.fixed_sale + (0,),
    )


@dataclass(frozen=True)
class FptasParams:
    """Scaling data: epsilon, the extreme positive trade bounds, and the
    rounding unit K = epsilon * U_min."""

    epsilon: Fraction
    U_min: Exact
    U_max: Exact
    K: Fraction


def fptas_params(inst: Instance, epsilon) -> FptasParams:
    """Derive the rounding unit for an instance.

    Raises EpsilonOutOfRange unless 0 < epsilon < 1 and NoPositiveBounds
    when every trade bound is zero.
    """
    epsilon = Fraction(exact(epsilon))
    if not 0 < epsilon < 1:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1), got {epsilon}")
    positive = [v for v in inst.Ux + inst.Uy if v > 0]
    if not positive:
        raise NoPositiveBounds("no positive trade bound to scale against")
    u_min = min(positive)
    u_max = max(positive)
    return FptasParams(
        epsilon=epsilon, U_min=u_min, U_max=u_max, K=epsilon * Fraction(u_min)
    )


def scale_trade_bounds(inst: Instance, params: FptasParams) -> Instance:
    """Round every upper trade bound down to a multiple of K.

    Stock bounds, s0, and payoffs stay untouched.  No positive bound scales
    to zero because K = epsilon * U_min < U_min.
    """
    K = params.K
    ux = tuple(exact(K * math.floor(Fraction(v) / K)) for v in inst.Ux)
    uy = tuple(exact(K * math.floor(Fraction(v) / K)) for v in inst.Uy)
    return Instance(
        variant=inst.variant,
        T=inst.T,
        s0=inst.s0,
        Ls=inst.Ls,
        Us=inst.Us,
        Lx=inst.Lx,
        Ux=ux,
        Ly=inst.Ly,
        Uy=uy,
        revenue=inst.revenue,
        cost=inst.cost,
        holding=inst.holding,
        fixed_purchase=inst.fixed_purchase,
        fixed_sale=inst.fixed_sale,
    )


def fptas_solve(inst: Instance, epsilon) -> Solution:
    """Approximate a wp3 instance to within a factor of (1 - epsilon).

    Rounds the trade bounds down to multiples of K = epsilon * U_min and
    solves the rounded instance exactly.  The result is feasible for the
    original instance and, for pure trading payoffs (zero holding costs),
    its objective is at least (1 - epsilon) times the optimum.  The rounded
    network has polynomially many stock levels in T and 1/epsilon when
    U_max / U_min is bounded.
    """
    validate_instance(inst)
    if inst.variant is not Variant.WP3:
        raise WrongVariant("fptas_solve applies to wp3 instances only")
    params = fptas_params(inst, epsilon)
    scaled = scale_trade_bounds(inst, params)
    return solve(scaled)
