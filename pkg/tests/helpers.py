"""Shared fixtures and brute-force reference implementations."""

from __future__ import annotations

import itertools
import random

from wareflow import (
    Instance,
    LotSizingInstance,
    Solution,
    assemble_solution,
    normalize_terminal,
)


def two_period_trade() -> Instance:
    """Buy up to 5 at cost 1, sell up to 5 at price 3, stock cap 10."""
    return Instance(
        variant="wp1", T=2, s0=0,
        Ls=(0, 0), Us=(10, 10),
        Lx=(0, 0), Ux=(5, 5),
        Ly=(0, 0), Uy=(5, 5),
        revenue=(3, 3), cost=(1, 1), holding=(0, 0),
        fixed_purchase=(0, 0), fixed_sale=(0, 0),
    )


def blocked_by_fixed_cost() -> Instance:
    """Same trade, but a period-1 fixed purchase cost that eats the margin."""
    base = two_period_trade()
    return Instance(
        variant=base.variant, T=base.T, s0=base.s0,
        Ls=base.Ls, Us=base.Us, Lx=base.Lx, Ux=base.Ux,
        Ly=base.Ly, Uy=base.Uy,
        revenue=base.revenue, cost=base.cost, holding=base.holding,
        fixed_purchase=(11, 0), fixed_sale=base.fixed_sale,
    )


def buy_then_sell() -> Instance:
    """wp3 shape: period 1 can only buy, period 2 can only sell."""
    return Instance(
        variant="wp3", T=2, s0=0,
        Ls=(0, 0), Us=(10, 10),
        Lx=(0, 0), Ux=(5, 0),
        Ly=(0, 0), Uy=(0, 5),
        revenue=(0, 3), cost=(1, 0), holding=(0, 0),
        fixed_purchase=(0, 0), fixed_sale=(0, 0),
    )


def wp2_mixed() -> Instance:
    """Small wp2 instance with every cost kind nonzero."""
    return Instance(
        variant="wp2", T=2, s0=1,
        Ls=(0, 0), Us=(3, 4),
        Lx=(1, 0), Ux=(2, 3),
        Ly=(0, 1), Uy=(2, 2),
        revenue=(4, 5), cost=(1, 2), holding=(0, 1),
        fixed_purchase=(1, 0), fixed_sale=(0, 2),
    )


def as_wp3(inst: Instance) -> Instance:
    """Relabel a wp3-shaped wp1 instance."""
    return Instance(
        variant="wp3", T=inst.T, s0=inst.s0,
        Ls=inst.Ls, Us=inst.Us, Lx=inst.Lx, Ux=inst.Ux,
        Ly=inst.Ly, Uy=inst.Uy,
        revenue=inst.revenue, cost=inst.cost, holding=inst.holding,
        fixed_purchase=inst.fixed_purchase, fixed_sale=inst.fixed_sale,
    )


def brute_lotsizing(ls: LotSizingInstance):
    """Cheapest production plan by full enumeration, or None if infeasible.

    Demands are served from opening stock; production lands in the same
    period's closing stock.  Only usable for tiny instances.
    """
    best = None
    ranges = [range(int(u) + 1) for u in ls.Ux]
    for x in itertools.product(*ranges):
        s_prev = ls.s0
        stocks = []
        ok = True
        for t in range(ls.T):
            if s_prev < ls.demand[t]:
                ok = False
                break
            s = s_prev - ls.demand[t] + x[t]
            if s > ls.Us[t]:
                ok = False
                break
            stocks.append(s)
            s_prev = s
        if not ok:
            continue
        cost = sum(
            ls.unit_cost[t] * x[t] + (ls.fixed_cost[t] if x[t] > 0 else 0)
            for t in range(ls.T)
        )
        key = (cost, x)
        if best is None or key < best[0]:
            best = (key, x, tuple(stocks))
    if best is None:
        return None
    (cost, _), x, stocks = best
    return cost, x, stocks


def has_balanced_split(entries) -> bool:
    total = sum(entries)
    if total % 2:
        return False
    sums = {0}
    for a in entries:
        sums |= {s + a for s in sums}
    return total // 2 in sums


def random_trading_wp3(seed: int, T: int, lo: int = 4, hi: int = 12) -> Instance:
    """Integral wp3 instance whose trade bounds all land in [lo, hi]."""
    rng = random.Random(seed)
    zero = (0,) * T
    Us = tuple(rng.randint(hi, 2 * hi) for _ in range(T))
    return Instance(
        variant="wp3", T=T,
        s0=rng.randint(0, min(Us)),
        Ls=zero, Us=Us,
        Lx=zero, Ux=tuple(rng.randint(lo, hi) for _ in range(T)),
        Ly=zero, Uy=tuple(rng.randint(lo, hi) for _ in range(T)),
        revenue=tuple(rng.randint(0, hi) for _ in range(T)),
        cost=tuple(rng.randint(0, hi) for _ in range(T)),
        holding=zero,
        fixed_purchase=zero, fixed_sale=zero,
    )


def random_settled_walk(inst: Instance, rng: random.Random):
    """A random feasible plan for normalize_terminal(inst) ending at s0.

    Walks the original periods inside the interval every period's stock
    bounds share, then lets the appended settling period move the stock
    back to s0.  Returns (normalized instance, solution).
    """
    norm = normalize_terminal(inst)
    floor = max(inst.Ls)
    ceiling = min(inst.Us)
    x, y = [], []
    s = inst.s0
    for t in range(inst.T):
        buy_room = min(inst.Ux[t], ceiling - s)
        sell_room = min(inst.Uy[t], s - floor)
        move = rng.choice(("hold", "buy", "sell"))
        if move == "buy" and buy_room > 0:
            amount = rng.randint(1, int(buy_room))
            x.append(amount)
            y.append(0)
            s += amount
        elif move == "sell" and sell_room > 0:
            amount = rng.randint(1, int(sell_room))
            x.append(0)
            y.append(amount)
            s -= amount
        else:
            x.append(0)
            y.append(0)
    if s >= inst.s0:
        x.append(0)
        y.append(s - inst.s0)
    else:
        x.append(inst.s0 - s)
        y.append(0)
    return norm, assemble_solution(norm, tuple(x), tuple(y))


def solution_with(sol: Solution, **overrides) -> Solution:
    fields = {
        "x": sol.x, "y": sol.y, "s": sol.s, "w": sol.w, "z": sol.z,
        "objective": sol.objective,
    }
    fields.update(overrides)
    return Solution(**fields)
