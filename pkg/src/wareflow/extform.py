"""Extended linear formulation over the arc-flow polytope.

One flow variable per network arc plus the period variables x, y, s, w, z.
The constraint families:

  (i)    flow conservation at every interior node,
  (ii)   unit outflow from the source,
  (iii)  nonnegative arc flows (kept as variable lower bounds),
  (iv)   x_t and y_t equal the flow-weighted arc trade amounts,
  (v)    stock balance s_t = s_{t-1} - y_t + x_t,
  (vi)   w_t equals the flow on purchasing arcs when Lx_t > 0,
  (vii)  w_t at least that flow when Lx_t = 0,
  (viii) z_t equals the flow on selling arcs when Ly_t > 0,
  (ix)   z_t at least that flow when Ly_t = 0,
  (x)    w_t <= 1 and z_t <= 1.

Indicators stay continuous; integrality comes from the polytope itself.
The module only builds, lifts, and prints the model; no LP solver is run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAPath
from .model import (
    Exact,
    FeasibilityReport,
    Instance,
    Solution,
    Variant,
    exact,
)
from .network import LayeredNetwork, build_network
from .stocklevels import double_horizon, gen_stock_levels

Term = tuple  # (variable name, coefficient)


@dataclass(frozen=True)
class LPVariable:
    name: str
    lower: Exact | None
    upper: Exact | None
    kind: str  # "continuous" or "binary-relaxed"


@dataclass(frozen=True)
class LPRow:
    """One linear constraint: sum of coeffs (sense) rhs."""

    name: str
    family: str  # "i", "ii", "iv", ..., "x"
    period: int  # 0 for rows not tied to a period
    coeffs: tuple[Term, ...]
    sense: str  # "=", "<=", ">="
    rhs: Exact


@dataclass(frozen=True)
class LPModel:
    variables: tuple[LPVariable, ...]
    objective: tuple[Term, ...]  # maximized
    rows: tuple[LPRow, ...]

    def families(self) -> set[str]:
        present = {row.family for row in self.rows}
        if any(v.name.startswith("a_") for v in self.variables):
            present.add("iii")  # carried by the flow variable lower bounds
        return present

    def eval_objective(self, values: dict) -> Exact:
        return exact(sum(c * values.get(n, 0) for n, c in self.objective))


def _arc_name(t: int, tail: int, head: int) -> str:
    return f"a_{t}_{tail}_{head}"


def build_extended_formulation(inst: Instance, net: LayeredNetwork) -> LPModel:
    """Write the arc-flow polytope of a network as an explicit LP model.

    The instance must be the one the network was built from.  Constraint
    (iii) is carried by the flow variables' lower bounds; every other family
    appears as rows (families (vi)..(ix) only for the periods they govern).
    """
    T = inst.T
    variables: list[LPVariable] = []
    arc_names: list[list[str]] = []
    for t in range(1, T + 1):
        names = []
        for tail, head, _ in net.arcs[t - 1]:
            name = _arc_name(t, tail, head)
            names.append(name)
            variables.append(LPVariable(name, 0, None, "continuous"))
        arc_names.append(names)
    for t in range(1, T + 1):
        for prefix in ("x", "y", "s"):
            variables.append(LPVariable(f"{prefix}_{t}", None, None, "continuous"))
        variables.append(LPVariable(f"w_{t}", None, None, "binary-relaxed"))
        variables.append(LPVariable(f"z_{t}", None, None, "binary-relaxed"))

    objective: list[Term] = []
    for t in range(1, T + 1):
        i = t - 1
        objective.extend(
            [
                (f"y_{t}", inst.revenue[i]),
                (f"x_{t}", -inst.cost[i]),
                (f"s_{t}", -inst.holding[i]),
                (f"w_{t}", -inst.fixed_purchase[i]),
                (f"z_{t}", -inst.fixed_sale[i]),
            ]
        )

    rows: list[LPRow] = []
    # (ii) the source emits one unit of flow
    rows.append(
        LPRow(
            name="unit_source",
            family="ii",
            period=0,
            coeffs=tuple((name, 1) for name in arc_names[0]),
            sense="=",
            rhs=1,
        )
    )
    # (i) conservation at interior nodes
    for t in range(1, T):
        incoming: dict[int, list[str]] = {}
        outgoing: dict[int, list[str]] = {}
        for (tail, head, _), name in zip(net.arcs[t - 1], arc_names[t - 1]):
            incoming.setdefault(head, []).append(name)
        for (tail, head, _), name in zip(net.arcs[t], arc_names[t]):
            outgoing.setdefault(tail, []).append(name)
        for node in range(len(net.layers[t])):
            coeffs = [(name, 1) for name in incoming.get(node, [])]
            coeffs += [(name, -1) for name in outgoing.get(node, [])]
            if not coeffs:
                continue
            rows.append(
                LPRow(
                    name=f"flow_{t}_{node}",
                    family="i",
                    period=t,
                    coeffs=tuple(coeffs),
                    sense="=",
                    rhs=0,
                )
            )
    # (iv) trade amounts are flow-weighted arc decisions
    for t in range(1, T + 1):
        x_terms = [
            (name, dec.x)
            for (_, _, dec), name in zip(net.arcs[t - 1], arc_names[t - 1])
            if dec.x != 0
        ]
        rows.append(
            LPRow(
                name=f"def_x_{t}",
                family="iv",
                period=t,
                coeffs=tuple(x_terms) + ((f"x_{t}", -1),),
                sense="=",
                rhs=0,
            )
        )
        y_terms = [
            (name, dec.y)
            for (_, _, dec), name in zip(net.arcs[t - 1], arc_names[t - 1])
            if dec.y != 0
        ]
        rows.append(
            LPRow(
                name=f"def_y_{t}",
                family="iv",
                period=t,
                coeffs=tuple(y_terms) + ((f"y_{t}", -1),),
                sense="=",
                rhs=0,
            )
        )
    # (v) stock balance
    for t in range(1, T + 1):
        coeffs = [(f"s_{t}", 1), (f"y_{t}", 1), (f"x_{t}", -1)]
        rhs = 0
        if t == 1:
            rhs = inst.s0
        else:
            coeffs.append((f"s_{t - 1}", -1))
        rows.append(
            LPRow(
                name=f"balance_{t}",
                family="v",
                period=t,
                coeffs=tuple(coeffs),
                sense="=",
                rhs=rhs,
            )
        )
    # (vi)-(ix) indicator coupling through arc flows
    for t in range(1, T + 1):
        i = t - 1
        purchase = [
            (name, -1)
            for (_, _, dec), name in zip(net.arcs[t - 1], arc_names[t - 1])
            if dec.x > 0
        ]
        family, sense = ("vi", "=") if inst.Lx[i] > 0 else ("vii", ">=")
        rows.append(
            LPRow(
                name=f"w_couple_{t}",
                family=family,
                period=t,
                coeffs=((f"w_{t}", 1),) + tuple(purchase),
                sense=sense,
                rhs=0,
            )
        )
        sale = [
            (name, -1)
            for (_, _, dec), name in zip(net.arcs[t - 1], arc_names[t - 1])
            if dec.y > 0
        ]
        family, sense = ("viii", "=") if inst.Ly[i] > 0 else ("ix", ">=")
        rows.append(
            LPRow(
                name=f"z_couple_{t}",
                family=family,
                period=t,
                coeffs=((f"z_{t}", 1),) + tuple(sale),
                sense=sense,
                rhs=0,
            )
        )
    # (x) indicator ceilings
    for t in range(1, T + 1):
        rows.append(
            LPRow(
                name=f"w_ub_{t}", family="x", period=t,
                coeffs=((f"w_{t}", 1),), sense="<=", rhs=1,
            )
        )
        rows.append(
            LPRow(
                name=f"z_ub_{t}", family="x", period=t,
                coeffs=((f"z_{t}", 1),), sense="<=", rhs=1,
            )
        )
    return LPModel(
        variables=tuple(variables),
        objective=tuple(objective),
        rows=tuple(rows),
    )


def lift_solution(net: LayeredNetwork, sol: Solution) -> dict:
    """Map a decoded path back to a unit flow plus the period variables.

    The path is located by the stock sequence; the solution's trades and
    indicators are attached as given.  Raises NotAPath when the stocks do
    not trace arcs of the network.
    """
    values: dict = {}
    T = len(net.arcs)
    if len(sol.s) != T:
        raise NotAPath(f"solution has {len(sol.s)} periods, network has {T}")
    node = 0
    for t in range(1, T + 1):
        layer = net.layers[t]
        try:
            head = layer.index(sol.s[t - 1])
        except ValueError:
            raise NotAPath(
                f"stock {sol.s[t - 1]} after period {t} is not a node"
            ) from None
        if not any(
            tail == node and h == head for tail, h, _ in net.arcs[t - 1]
        ):
            raise NotAPath(f"no arc for period {t} stock move")
        # the path is located by stocks alone; trades attach verbatim below,
        # so a tampered trade surfaces as a row violation, not NotAPath
        values[_arc_name(t, node, head)] = 1
        node = head
    for t in range(1, T + 1):
        values[f"x_{t}"] = sol.x[t - 1]
        values[f"y_{t}"] = sol.y[t - 1]
        values[f"s_{t}"] = sol.s[t - 1]
        values[f"w_{t}"] = sol.w[t - 1]
        values[f"z_{t}"] = sol.z[t - 1]
    return values


def lift_and_check(
    inst: Instance, net: LayeredNetwork, sol: Solution
) -> FeasibilityReport:
    """Lift a solved plan into the LP and evaluate every row exactly.

    Returns a report whose violations carry the row name and both sides;
    flow-variable sign checks report under the family (iii) name.
    """
    model = build_extended_formulation(inst, net)
    values = lift_solution(net, sol)
    bad = []
    for var in model.variables:
        v = values.get(var.name, 0)
        if var.lower is not None and v < var.lower:
            bad.append((0, f"iii_{var.name}", v, var.lower))
        if var.upper is not None and v > var.upper:
            bad.append((0, f"ub_{var.name}", v, var.upper))
    for row in model.rows:
        lhs = exact(sum(c * values.get(n, 0) for n, c in row.coeffs))
        ok = (
            lhs == row.rhs
            if row.sense == "="
            else lhs <= row.rhs if row.sense == "<=" else lhs >= row.rhs
        )
        if not ok:
            bad.append((row.period, row.name, lhs, row.rhs))
    return FeasibilityReport(feasible=not bad, violations=tuple(bad))


# --- text emission -----------------------------------------------------------


def _decimal_or_none(value: Exact) -> str | None:
    """Exact decimal literal for a rational, or None when impossible."""
    v = Fraction(value)
    rest = v.denominator
    twos = fives = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return None
    exp = max(twos, fives)
    scaled = abs(v.numerator) * (10**exp // v.denominator)
    sign = "-" if v < 0 else ""
    if exp == 0:
        return f"{sign}{scaled}"
    digits = str(scaled).rjust(exp + 1, "0")
    return f"{sign}{digits[:-exp]}.{digits[-exp:]}"


def _model_numbers(model: LPModel):
    for _, coeff in model.objective:
        yield coeff
    for row in model.rows:
        yield row.rhs
        for _, coeff in row.coeffs:
            yield coeff
    for var in model.variables:
        if var.lower is not None:
            yield var.lower
        if var.upper is not None:
            yield var.upper


def _scale_instance(inst: Instance, factor: int) -> Instance:
    def times(vec):
        return tuple(exact(v * factor) for v in vec)

    return Instance(
        variant=inst.variant,
        T=inst.T,
        s0=exact(inst.s0 * factor),
        Ls=times(inst.Ls),
        Us=times(inst.Us),
        Lx=times(inst.Lx),
        Ux=times(inst.Ux),
        Ly=times(inst.Ly),
        Uy=times(inst.Uy),
        revenue=times(inst.revenue),
        cost=times(inst.cost),
        holding=times(inst.holding),
        fixed_purchase=times(inst.fixed_purchase),
        fixed_sale=times(inst.fixed_sale),
    )


def _render(model: LPModel, comments: tuple[str, ...]) -> str:
    def num(value: Exact) -> str:
        text = _decimal_or_none(value)
        assert text is not None, "caller guarantees decimal-exact numbers"
        return text

    def expr(terms) -> str:
        parts = []
        for name, coeff in terms:
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            mag = num(abs(coeff))
            piece = name if mag == "1" else f"{mag} {name}"
            parts.append(f"{sign} {piece}")
        if not parts:
            return "0 "
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    lines = [f"\\ {c}" for c in comments]
    lines.append("Maximize")
    lines.append(f" obj: {expr(model.objective)}")
    lines.append("Subject To")
    for row in model.rows:
        lines.append(f" {row.name}: {expr(row.coeffs)} {row.sense} {num(row.rhs)}")
    lines.append("Bounds")
    for var in model.variables:
        if var.lower == 0 and var.upper is None:
            continue  # the format's default bounds
        if var.lower is None and var.upper is None:
            lines.append(f" {var.name} free")
        elif var.lower is None:
            lines.append(f" -inf <= {var.name} <= {num(var.upper)}")
        elif var.upper is None:
            lines.append(f" {var.name} >= {num(var.lower)}")
        else:
            lines.append(f" {num(var.lower)} <= {var.name} <= {num(var.upper)}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def emit_lp(inst: Instance) -> str:
    """Print the extended formulation in the common LP text dialect.

    wp2 instances are emitted on their doubled horizon, matching how they
    are solved.  Every number must print as an exact decimal; when the data
    makes that impossible, all instance data is scaled up by one integer
    factor first and a comment line records the factor.
    """
    base = inst
    if inst.variant is Variant.WP2:
        base = double_horizon(inst).instance
    comments = ["extended formulation over the trading network"]
    model = build_extended_formulation(base, _network_for(base))
    if any(_decimal_or_none(v) is None for v in _model_numbers(model)):
        factor = 1
        for value in _instance_numbers(base):
            factor = math.lcm(factor, Fraction(value).denominator)
        base = _scale_instance(base, factor)
        model = build_extended_formulation(base, _network_for(base))
        comments.append(f"all instance data scaled by {factor}")
    return _render(model, tuple(comments))


def _network_for(inst: Instance) -> LayeredNetwork:
    return build_network(inst, gen_stock_levels(inst))


def _instance_numbers(inst: Instance):
    yield inst.s0
    for name in (
        "Ls", "Us", "Lx", "Ux", "Ly", "Uy",
        "revenue", "cost", "holding", "fixed_purchase", "fixed_sale",
    ):
        yield from getattr(inst, name)
