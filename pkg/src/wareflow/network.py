"""Layered trading network and the exact longest-path solver.

Layer 0 holds the single node s0; layer t holds the candidate stock values
for period t.  An arc from stock s to stock s' in period t carries the best
feasible trade decision realizing that stock change, and its payoff.  Every
source-to-sink path decodes to a feasible plan, and some optimal plan is a
path, so a longest path is an optimal plan.

Tie-breaking is fully deterministic: among equal-payoff candidates on one
arc the smaller x wins, then smaller w, then smaller z; among equal-value
paths the lexicographically smallest stock sequence wins.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Infeasible, WrongVariant
from .model import (
    Exact,
    Instance,
    Solution,
    Variant,
    evaluate_payoff,
    validate_instance,
)
from .stocklevels import StockLevels, double_horizon, gen_stock_levels


@dataclass(frozen=True)
class ArcDecision:
    """The trade carried by one arc: amounts, indicators, and payoff."""

    x: Exact
    y: Exact
    w: int
    z: int
    payoff: Exact


Arc = tuple  # (tail index in layer t-1, head index in layer t, ArcDecision)


@dataclass(frozen=True)
class LayeredNetwork:
    """Acyclic layered graph over candidate stock values.

    layers has T+1 entries; layers[0] == (s0,).  arcs[t-1] lists the period-t
    arcs as (tail, head, decision) with indices into the adjacent layers.
    """

    layers: tuple[tuple[Exact, ...], ...]
    arcs: tuple[tuple[Arc, ...], ...]

    @property
    def node_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def arc_count(self) -> int:
        return sum(len(period) for period in self.arcs)


def _indicator(amount) -> int:
    """Minimal indicator for a trade amount.

    A positive amount forces the indicator on.  For a zero amount, off is
    always consistent and, with nonnegative fixed costs, payoff-maximal, so
    it wins the tie.
    """
    return 1 if amount > 0 else 0


def _wp1_candidates(inst: Instance, t: int, s_prev, s_next) -> list[ArcDecision]:
    i = t - 1
    delta = s_next - s_prev
    if delta > 0:
        x, y = delta, 0
        if not inst.Lx[i] <= x <= inst.Ux[i]:
            return []
    elif delta < 0:
        x, y = 0, -delta
        if not inst.Ly[i] <= y <= inst.Uy[i]:
            return []
    else:
        x, y = 0, 0
    w = _indicator(x)
    z = _indicator(y)
    payoff = evaluate_payoff(inst, t, x, y, s_next, w, z)
    return [ArcDecision(x=x, y=y, w=w, z=z, payoff=payoff)]


def _wp2_candidates(inst: Instance, t: int, s_prev, s_next) -> list[ArcDecision]:
    """Enumerate the trade decisions that can be extreme on a wp2 arc.

    With the flow balance fixed by (s_prev, s_next), an extreme decision has
    a second tight constraint.  The seven cases: the sale drains the opening
    stock (y = s_prev, x = s_next); the purchase indicator is off, or the
    purchase sits at Lx or Ux; the sale indicator is off, or the sale sits
    at Ly or Uy.  Each case is completed via y = s_prev - s_next + x and
    filtered against sign, availability, and the coupled bounds.
    """
    i = t - 1
    shift = s_prev - s_next  # y - x on any feasible arc
    cases: list[tuple[Exact, Exact, int | None, int | None]] = [
        (s_next, s_prev, None, None),        # sale bounded by opening stock
        (0, shift, 0, None),                 # purchases off
        (inst.Lx[i], shift + inst.Lx[i], 1, None),
        (inst.Ux[i], shift + inst.Ux[i], 1, None),
        (s_next - s_prev, 0, None, 0),       # sales off
        (s_next - s_prev + inst.Ly[i], inst.Ly[i], None, 1),
        (s_next - s_prev + inst.Uy[i], inst.Uy[i], None, 1),
    ]
    out: list[ArcDecision] = []
    seen = set()
    for x, y, w_pin, z_pin in cases:
        if x < 0 or y < 0 or y > s_prev:
            continue
        w = w_pin if w_pin is not None else _indicator(x)
        z = z_pin if z_pin is not None else _indicator(y)
        if not inst.Lx[i] * w <= x <= inst.Ux[i] * w:
            continue
        if not inst.Ly[i] * z <= y <= inst.Uy[i] * z:
            continue
        key = (x, y, w, z)
        if key in seen:
            continue
        seen.add(key)
        payoff = evaluate_payoff(inst, t, x, y, s_next, w, z)
        out.append(ArcDecision(x=x, y=y, w=w, z=z, payoff=payoff))
    return out


def arc_candidates(inst: Instance, t: int, s_prev, s_next) -> list[ArcDecision]:
    """All extreme trade decisions for moving stock s_prev to s_next in t.

    wp1/wp3 arcs admit at most one decision (the stock change fixes the
    trade side); wp2 arcs may admit several, one per tight-constraint case.
    """
    if inst.variant is Variant.WP2:
        return _wp2_candidates(inst, t, s_prev, s_next)
    return _wp1_candidates(inst, t, s_prev, s_next)


def build_network(inst: Instance, levels: StockLevels) -> LayeredNetwork:
    """Assemble the layered network over the given candidate stock values.

    For each ordered node pair in adjacent layers the payoff-maximizing
    candidate is kept (ties: smaller x, then w, then z).  The network is not
    pruned: nodes with no incoming or outgoing arcs stay, and infeasibility
    surfaces as the absence of any source-to-sink path.
    """
    layers = ((inst.s0,),) + tuple(levels.levels)
    all_arcs = []
    for t in inst.periods:
        period_arcs = []
        tails = layers[t - 1]
        heads = layers[t]
        for ti, s_prev in enumerate(tails):
            for hi, s_next in enumerate(heads):
                cands = arc_candidates(inst, t, s_prev, s_next)
                if not cands:
                    continue
                best = max(cands, key=lambda c: (c.payoff, -c.x, -c.w, -c.z))
                period_arcs.append((ti, hi, best))
        all_arcs.append(tuple(period_arcs))
    return LayeredNetwork(layers=layers, arcs=tuple(all_arcs))


def _longest_path(net: LayeredNetwork):
    """Best payoff to the last layer from every node, plus adjacency lists."""
    T = len(net.arcs)
    adjacency = []
    for t in range(1, T + 1):
        adj: dict[int, list] = {}
        for tail, head, dec in net.arcs[t - 1]:
            adj.setdefault(tail, []).append((head, dec))
        adjacency.append(adj)
    suffix: list[list] = [[None] * len(layer) for layer in net.layers]
    suffix[T] = [0] * len(net.layers[T])
    for t in range(T, 0, -1):
        for tail, outgoing in adjacency[t - 1].items():
            best = None
            for head, dec in outgoing:
                tail_value = suffix[t][head]
                if tail_value is None:
                    continue
                total = dec.payoff + tail_value
                if best is None or total > best:
                    best = total
            suffix[t - 1][tail] = best
    return suffix, adjacency


def _decode(net: LayeredNetwork) -> Solution:
    suffix, adjacency = _longest_path(net)
    if not net.layers[-1] or suffix[0][0] is None:
        raise Infeasible("no feasible trading plan")
    x, y, w, z, stocks = [], [], [], [], []
    node = 0
    total = 0
    for t in range(1, len(net.layers)):
        target = suffix[t - 1][node]
        chosen = None
        # heads ascend in stock order, so the first hit is the
        # lexicographically smallest continuation
        for head, dec in sorted(adjacency[t - 1].get(node, ())):
            if suffix[t][head] is None:
                continue
            if dec.payoff + suffix[t][head] == target:
                chosen = (head, dec)
                break
        assert chosen is not None, "suffix values promise a continuation"
        head, dec = chosen
        x.append(dec.x)
        y.append(dec.y)
        w.append(dec.w)
        z.append(dec.z)
        stocks.append(net.layers[t][head])
        total += dec.payoff
        node = head
    return Solution(x=tuple(x), y=tuple(y), s=tuple(stocks),
                    w=tuple(w), z=tuple(z), objective=total)


def _solve_network(inst: Instance) -> Solution:
    levels = gen_stock_levels(inst)
    net = build_network(inst, levels)
    return _decode(net)


def solve_with_network(inst: Instance) -> tuple[Solution, LayeredNetwork]:
    """Solve an instance and return the network the plan was decoded from.

    For wp2 the returned network is the doubled-horizon one actually
    searched, while the solution is mapped back to the original periods.
    Raises Infeasible when no plan exists.
    """
    validate_instance(inst)
    if inst.variant is Variant.WP2:
        doubled = double_horizon(inst)
        levels = gen_stock_levels(doubled.instance)
        net = build_network(doubled.instance, levels)
        return doubled.map_back(_decode(net)), net
    levels = gen_stock_levels(inst)
    net = build_network(inst, levels)
    return _decode(net), net


def solve(inst: Instance) -> Solution:
    """Solve an instance exactly via the layered network.

    wp2 instances are rewritten onto the doubled horizon first and the
    2T-period plan is mapped back, so the single wp1 arc rule serves all
    variants.  Raises Infeasible when no plan exists.
    """
    return solve_with_network(inst)[0]


def solve_wp2_direct(inst: Instance) -> Solution:
    """Solve a wp2 instance on its own network via the seven-case arcs.

    Exists as an independent route for cross-checking solve(); the two must
    agree in objective value.
    """
    validate_instance(inst)
    if inst.variant is not Variant.WP2:
        raise WrongVariant("solve_wp2_direct applies to wp2 instances only")
    return _solve_network(inst)


def to_dot(net: LayeredNetwork) -> str:
    """Render the network in DOT format for debugging."""
    lines = ["digraph trading {", "  rankdir=LR;"]
    for t, layer in enumerate(net.layers):
        for i, stock in enumerate(layer):
            lines.append(f'  n_{t}_{i} [label="{t}:{stock}"];')
    for t, period in enumerate(net.arcs, start=1):
        for tail, head, dec in period:
            lines.append(
                f'  n_{t - 1}_{tail} -> n_{t}_{head} [label="{dec.payoff}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
