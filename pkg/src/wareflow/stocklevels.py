"""Candidate stock levels covering every extreme-point trajectory.

An optimal extreme plan always pins the stock to a bound at certain periods
and trades at a bound (or not at all) in between.  The candidate set for
period t therefore collects every value reachable from an anchor by a run of
per-period bound-sized moves:

* forward values: an anchor (t0, K), with K = s0 at t0 = 0 and K in
  {Ls_{t0}, Us_{t0}} at t0 >= 1, plus one move per period i in t0+1..t drawn
  from {0, +Lx_i, +Ux_i, -Ly_i, -Uy_i};
* backward values: an anchor (t1, K') with K' in {Ls_{t1}, Us_{t1}} for
  t1 > t, plus one move per period i in t+1..t1 drawn from
  {0, -Lx_i, -Ux_i, +Ly_i, +Uy_i}.

The union is clipped to [Ls_t, Us_t], deduplicated, and sorted.  Both sweeps
expand layer by layer over value sets, so the work is proportional to the
number of distinct values rather than the number of move selections.

For wp2 instances the computation runs on the purchases/sales-split doubled
horizon (see double_horizon) and projects the even layers back, which adds
zero as an anchor value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WrongVariant
from .model import Exact, Instance, Solution, Variant, compute_objective


@dataclass(frozen=True)
class StockLevels:
    """Per-period candidate stock values, sorted ascending.

    levels[t-1] lists the candidates for the stock after period t.
    S_size is max_t |levels[t-1]|, the width that sizes the network.
    """

    levels: tuple[tuple[Exact, ...], ...]
    S_size: int


@dataclass(frozen=True)
class DoubledHorizon:
    """A wp2 instance recast over 2T periods with one trade side per period.

    Odd periods 2t-1 carry only the sales of original period t, even periods
    2t only its purchases.  Stock bounds are [0, Us_t] after an odd period
    and [Ls_t, Us_t] after an even one, which encodes y_t <= s_{t-1} while
    keeping plain complementarity (each period trades on one side only).
    map_back restores a T-period solution via x_t = x'_{2t}, y_t = y'_{2t-1},
    s_t = s'_{2t}, w_t = w'_{2t}, z_t = z'_{2t-1}.
    """

    instance: Instance
    source: Instance

    def map_back(self, sol: Solution) -> Solution:
        T = self.source.T
        if len(sol.x) != 2 * T:
            raise ValueError(
                f"expected a {2 * T}-period solution, got {len(sol.x)}"
            )
        x = sol.x[1::2]
        y = sol.y[0::2]
        s = sol.s[1::2]
        w = sol.w[1::2]
        z = sol.z[0::2]
        objective = compute_objective(self.source, x, y, s, w, z)
        return Solution(x=x, y=y, s=s, w=w, z=z, objective=objective)


def double_horizon(inst: Instance) -> DoubledHorizon:
    """Split every wp2 period into a sales half then a purchases half.

    The doubled instance is a wp1 instance over 2T periods whose feasible
    plans correspond one to one with the wp2 plans, with equal objective.
    """
    if inst.variant is not Variant.WP2:
        raise WrongVariant("double_horizon applies to wp2 instances only")

    def interleave(odd, even):
        out = []
        for a, b in zip(odd, even):
            out.append(a)
            out.append(b)
        return tuple(out)

    doubled = Instance(
        variant=Variant.WP1,
        T=2 * inst.T,
        s0=inst.s0,
        Ls=interleave((0,) * inst.T, inst.Ls),
        Us=interleave(inst.Us, inst.Us),
        Lx=interleave((0,) * inst.T, inst.Lx),
        Ux=interleave((0,) * inst.T, inst.Ux),
        Ly=interleave(inst.Ly, (0,) * inst.T),
        Uy=interleave(inst.Uy, (0,) * inst.T),
        revenue=interleave(inst.revenue, (0,) * inst.T),
        cost=interleave((0,) * inst.T, inst.cost),
        holding=interleave((0,) * inst.T, inst.holding),
        fixed_purchase=interleave((0,) * inst.T, inst.fixed_purchase),
        fixed_sale=interleave(inst.fixed_sale, (0,) * inst.T),
    )
    return DoubledHorizon(instance=doubled, source=inst)


def _forward_sets(inst: Instance) -> list[set]:
    """values[t] = anchors at or before t pushed forward by bound moves."""
    values: list[set] = [{inst.s0}]
    for t in inst.periods:
        i = t - 1
        moves = {0, inst.Lx[i], inst.Ux[i], -inst.Ly[i], -inst.Uy[i]}
        layer = {v + d for v in values[t - 1] for d in moves}
        layer.add(inst.Ls[i])  # anchors at t enter unmoved
        layer.add(inst.Us[i])
        values.append(layer)
    return values


def _backward_sets(inst: Instance) -> list[set]:
    """values[t] = anchors after t pulled back by undoing bound moves."""
    values: list[set] = [set() for _ in range(inst.T + 1)]
    for t in range(inst.T - 1, -1, -1):
        i = t  # period t+1 has vector index t
        moves = {0, -inst.Lx[i], -inst.Ux[i], inst.Ly[i], inst.Uy[i]}
        seed = values[t + 1] | {inst.Ls[i], inst.Us[i]}
        values[t] = {v + d for v in seed for d in moves}
    return values


def gen_stock_levels(inst: Instance) -> StockLevels:
    """Compute the candidate stock values for every period.

    The instance is assumed validated.  For wp2 the doubled horizon is
    expanded and its even layers are projected back.
    """
    if inst.variant is Variant.WP2:
        doubled = double_horizon(inst).instance
        inner = gen_stock_levels(doubled)
        levels = tuple(inner.levels[2 * t - 1] for t in inst.periods)
        size = max((len(lv) for lv in levels), default=0)
        return StockLevels(levels=levels, S_size=size)
    forward = _forward_sets(inst)
    backward = _backward_sets(inst)
    levels = []
    for t in inst.periods:
        i = t - 1
        pool = forward[t] | backward[t]
        clipped = sorted(v for v in pool if inst.Ls[i] <= v <= inst.Us[i])
        levels.append(tuple(clipped))
    size = max((len(lv) for lv in levels), default=0)
    return StockLevels(levels=tuple(levels), S_size=size)


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


def bound_S(inst: Instance) -> int:
    """Smallest applicable a-priori bound on the per-period level count.

    Three forms apply in a cascade: integral bound data admit
    max_t(Us_t - Ls_t) + 1; time-independent bounds admit a polynomial in T;
    otherwise a generic exponential cap holds.  When several forms apply the
    smallest is returned.  wp2 instances are measured on their doubled
    horizon, whose period count is 2T and whose expansion alternates the
    two trade sides.
    """
    candidates = []
    if inst.bounds_integral():
        span = max(inst.Us[i] - inst.Ls[i] for i in range(inst.T))
        candidates.append(int(span) + 1)
    if inst.bounds_time_independent():
        horizon = 2 * inst.T if inst.variant is Variant.WP2 else inst.T
        candidates.append(_ceil_div(3 * (horizon + 1) ** 4, 4))
    if not candidates:
        if inst.variant is Variant.WP2:
            candidates.append((4 * inst.T + 1) * 9 ** inst.T)
        else:
            candidates.append((2 * inst.T + 1) * 3 ** inst.T)
    return min(candidates)
