"""Problem and solution data model: exact arithmetic, validation, feasibility
checking, and JSON round-tripping.

A trading instance covers periods 1..T.  In period t the plan may purchase
x_t and sell y_t subject to indicator-coupled bounds, and the stock evolves
by the balance equation s_t = s_{t-1} - y_t + x_t.  Three variants are
supported: wp1 forbids buying and selling in the same period, wp2 instead
limits each sale to the opening stock (y_t <= s_{t-1}), and wp3 is wp1 with
zero lower trade bounds and zero fixed costs.

Every numeric datum is an exact rational, held as a plain int whenever the
value is integral and as fractions.Fraction otherwise.  Floats are rejected
at the boundary so no feasibility or optimality decision rests on rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .errors import (
    LowerExceedsUpper,
    NegativeBound,
    PeriodOutOfRange,
    WP3ShapeViolation,
    WrongVectorLength,
)

Exact = Union[int, Fraction]


def exact(value) -> Exact:
    """Coerce a number to exact form: int when integral, Fraction otherwise.

    Accepts ints, Fractions, and strings such as "7" or "3/4".  Floats are
    rejected because they would smuggle rounding error into computations
    that must stay exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, float):
        raise TypeError(f"floats are not exact: {value!r}")
    if isinstance(value, int):
        return value
    f = Fraction(value)
    return int(f) if f.denominator == 1 else f


def exact_vector(values: Iterable) -> tuple[Exact, ...]:
    return tuple(exact(v) for v in values)


def format_exact(value: Exact) -> int | str:
    """Render a rational for JSON: plain integer or a "p/q" string."""
    v = exact(value)
    if isinstance(v, int):
        return v
    return f"{v.numerator}/{v.denominator}"


def parse_exact(raw) -> Exact:
    """Parse a JSON number field: an integer or a "p/q" string."""
    if isinstance(raw, bool):
        raise ValueError(f"expected integer or 'p/q' string, got {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return exact(Fraction(raw))
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"not a rational literal: {raw!r}") from err
    raise ValueError(f"expected integer or 'p/q' string, got {raw!r}")


class Variant(Enum):
    """Which coupling between purchases and sales the instance uses."""

    WP1 = "wp1"  # complementarity: x_t * y_t = 0
    WP2 = "wp2"  # sales limited by opening stock: y_t <= s_{t-1}
    WP3 = "wp3"  # wp1 shape with zero lower trade bounds and fixed costs


def _coerce_variant(value) -> Variant:
    if isinstance(value, Variant):
        return value
    try:
        return Variant(str(value).lower())
    except ValueError as err:
        raise ValueError(f"unknown variant: {value!r}") from err


_VECTOR_FIELDS = (
    "Ls", "Us", "Lx", "Ux", "Ly", "Uy",
    "revenue", "cost", "holding", "fixed_purchase", "fixed_sale",
)


@dataclass(frozen=True)
class Instance:
    """One trading problem over periods 1..T.

    Vectors are indexed 0..T-1 for periods 1..T.  Bounds come in pairs:
    [Ls, Us] brackets the stock after each period, [Lx, Ux] the purchase
    amount when the purchase indicator is on, [Ly, Uy] the sale amount when
    the sale indicator is on.  revenue/cost/holding are the linear payoff
    coefficients and fixed_purchase/fixed_sale the per-period charges for
    switching an indicator on.
    """

    variant: Variant
    T: int
    s0: Exact
    Ls: tuple[Exact, ...]
    Us: tuple[Exact, ...]
    Lx: tuple[Exact, ...]
    Ux: tuple[Exact, ...]
    Ly: tuple[Exact, ...]
    Uy: tuple[Exact, ...]
    revenue: tuple[Exact, ...]
    cost: tuple[Exact, ...]
    holding: tuple[Exact, ...]
    fixed_purchase: tuple[Exact, ...]
    fixed_sale: tuple[Exact, ...]

    def __post_init__(self):
        object.__setattr__(self, "variant", _coerce_variant(self.variant))
        object.__setattr__(self, "T", int(self.T))
        object.__setattr__(self, "s0", exact(self.s0))
        for name in _VECTOR_FIELDS:
            object.__setattr__(self, name, exact_vector(getattr(self, name)))

    @property
    def periods(self) -> range:
        return range(1, self.T + 1)

    def bounds_integral(self) -> bool:
        """True when s0 and every bound vector hold integers only."""
        values = [self.s0]
        for name in ("Ls", "Us", "Lx", "Ux", "Ly", "Uy"):
            values.extend(getattr(self, name))
        return all(isinstance(v, int) for v in values)

    def bounds_time_independent(self) -> bool:
        """True when each of the six bound vectors is constant over time."""
        for name in ("Ls", "Us", "Lx", "Ux", "Ly", "Uy"):
            vec = getattr(self, name)
            if any(v != vec[0] for v in vec):
                return False
        return True


@dataclass(frozen=True)
class Solution:
    """A trading plan: amounts, stocks, indicators, and its objective value.

    s holds the stock after each period (s[t-1] is the stock at the end of
    period t); the initial stock lives on the instance.
    """

    x: tuple[Exact, ...]
    y: tuple[Exact, ...]
    s: tuple[Exact, ...]
    w: tuple[Exact, ...]
    z: tuple[Exact, ...]
    objective: Exact

    def __post_init__(self):
        for name in ("x", "y", "s", "w", "z"):
            object.__setattr__(self, name, exact_vector(getattr(self, name)))
        object.__setattr__(self, "objective", exact(self.objective))


Violation = tuple  # (period, constraint name, lhs, rhs)


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of checking a solution: feasible iff violations is empty."""

    feasible: bool
    violations: tuple[Violation, ...]

    def to_json_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "violations": [
                {
                    "period": p,
                    "constraint": name,
                    "lhs": format_exact(lhs),
                    "rhs": format_exact(rhs),
                }
                for (p, name, lhs, rhs) in self.violations
            ],
        }


def validate_instance(inst: Instance) -> None:
    """Check every structural invariant, reporting the first failure.

    Violations are reported smallest period first.  Raises NegativeBound,
    LowerExceedsUpper, WrongVectorLength, or WP3ShapeViolation.
    """
    if inst.T < 1:
        raise WrongVectorLength(f"T must be positive, got {inst.T}")
    for name in _VECTOR_FIELDS:
        vec = getattr(inst, name)
        if len(vec) != inst.T:
            raise WrongVectorLength(
                f"{name} has length {len(vec)}, expected T={inst.T}"
            )
    if inst.s0 < 0:
        raise NegativeBound(f"s0 = {inst.s0} is negative")
    pairs = (("Ls", "Us"), ("Lx", "Ux"), ("Ly", "Uy"))
    for t in inst.periods:
        i = t - 1
        for lo_name, hi_name in pairs:
            lo = getattr(inst, lo_name)[i]
            hi = getattr(inst, hi_name)[i]
            if lo < 0:
                raise NegativeBound(f"{lo_name}[{t}] = {lo} is negative")
            if hi < 0:
                raise NegativeBound(f"{hi_name}[{t}] = {hi} is negative")
            if lo > hi:
                raise LowerExceedsUpper(
                    f"{lo_name}[{t}] = {lo} exceeds {hi_name}[{t}] = {hi}"
                )
        for name in ("fixed_purchase", "fixed_sale"):
            v = getattr(inst, name)[i]
            if v < 0:
                raise NegativeBound(f"{name}[{t}] = {v} is negative")
    if inst.variant is Variant.WP3:
        for t in inst.periods:
            i = t - 1
            for name in ("Lx", "Ly", "fixed_purchase", "fixed_sale"):
                v = getattr(inst, name)[i]
                if v != 0:
                    raise WP3ShapeViolation(
                        f"wp3 requires {name}[{t}] = 0, got {v}"
                    )
            if not inst.Ls[i] <= inst.s0 <= inst.Us[i]:
                raise WP3ShapeViolation(
                    f"wp3 requires Ls[{t}] <= s0 <= Us[{t}], got "
                    f"{inst.Ls[i]} <= {inst.s0} <= {inst.Us[i]}"
                )


def evaluate_payoff(inst: Instance, t: int, x, y, s, w, z) -> Exact:
    """Payoff contributed by period t given its amounts and indicators.

    s is the stock at the end of period t.  t is 1-based.
    """
    if not 1 <= t <= inst.T:
        raise PeriodOutOfRange(f"period {t} outside 1..{inst.T}")
    i = t - 1
    return (
        inst.revenue[i] * y
        - inst.cost[i] * x
        - inst.holding[i] * s
        - inst.fixed_purchase[i] * w
        - inst.fixed_sale[i] * z
    )


def compute_objective(inst: Instance, x, y, s, w, z) -> Exact:
    """Total payoff of a full plan (vectors indexed 0..T-1)."""
    total = 0
    for t in inst.periods:
        i = t - 1
        total += evaluate_payoff(inst, t, x[i], y[i], s[i], w[i], z[i])
    return exact(total)


def assemble_solution(inst: Instance, x, y, w=None, z=None) -> Solution:
    """Build a Solution from trade amounts, deriving stocks and objective.

    Indicators default to the minimal assignment (on iff the amount is
    positive), which is payoff-maximal under nonnegative fixed costs.
    """
    x = exact_vector(x)
    y = exact_vector(y)
    if len(x) != inst.T or len(y) != inst.T:
        raise WrongVectorLength("x and y must have length T")
    if w is None:
        w = tuple(1 if v > 0 else 0 for v in x)
    if z is None:
        z = tuple(1 if v > 0 else 0 for v in y)
    stocks = []
    s_prev = inst.s0
    for i in range(inst.T):
        s_prev = s_prev - y[i] + x[i]
        stocks.append(s_prev)
    objective = compute_objective(inst, x, y, stocks, w, z)
    return Solution(x=x, y=y, s=tuple(stocks), w=w, z=z, objective=objective)


def check_solution(inst: Instance, sol: Solution) -> FeasibilityReport:
    """Verify a plan against every constraint of the instance.

    Checks flow balance, the six bound pairs with indicator coupling, the
    variant-specific coupling constraint, binary indicators, and that the
    stored objective matches a recomputation.  Violations are recorded as
    (period, constraint, lhs, rhs) tuples; the objective check uses period 0.
    """
    for name in ("x", "y", "s", "w", "z"):
        if len(getattr(sol, name)) != inst.T:
            raise WrongVectorLength(
                f"solution {name} has length {len(getattr(sol, name))}, "
                f"expected T={inst.T}"
            )
    bad: list[Violation] = []
    s_prev = inst.s0
    for t in inst.periods:
        i = t - 1
        x, y, s, w, z = sol.x[i], sol.y[i], sol.s[i], sol.w[i], sol.z[i]
        if w not in (0, 1):
            bad.append((t, "w_binary", w, 1))
        if z not in (0, 1):
            bad.append((t, "z_binary", z, 1))
        if s != s_prev - y + x:
            bad.append((t, "flow_balance", s, s_prev - y + x))
        if s < inst.Ls[i]:
            bad.append((t, "stock_lower", s, inst.Ls[i]))
        if s > inst.Us[i]:
            bad.append((t, "stock_upper", s, inst.Us[i]))
        if x < inst.Lx[i] * w:
            bad.append((t, "purchase_lower", x, inst.Lx[i] * w))
        if x > inst.Ux[i] * w:
            bad.append((t, "purchase_upper", x, inst.Ux[i] * w))
        if y < inst.Ly[i] * z:
            bad.append((t, "sale_lower", y, inst.Ly[i] * z))
        if y > inst.Uy[i] * z:
            bad.append((t, "sale_upper", y, inst.Uy[i] * z))
        if inst.variant is Variant.WP2:
            if y > s_prev:
                bad.append((t, "sale_availability", y, s_prev))
        else:
            if x * y != 0:
                bad.append((t, "complementarity", x * y, 0))
        s_prev = s
    recomputed = compute_objective(inst, sol.x, sol.y, sol.s, sol.w, sol.z)
    if recomputed != sol.objective:
        bad.append((0, "objective", sol.objective, recomputed))
    return FeasibilityReport(feasible=not bad, violations=tuple(bad))


# --- JSON round-tripping ---------------------------------------------------

_INSTANCE_KEYS = ("variant", "T", "s0") + _VECTOR_FIELDS


def instance_to_json_dict(inst: Instance) -> dict:
    out: dict = {"variant": inst.variant.value, "T": inst.T,
                 "s0": format_exact(inst.s0)}
    for name in _VECTOR_FIELDS:
        out[name] = [format_exact(v) for v in getattr(inst, name)]
    return out


def instance_from_json_dict(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise ValueError("instance JSON must be an object")
    missing = [k for k in _INSTANCE_KEYS if k not in data]
    if missing:
        raise ValueError(f"instance JSON missing keys: {', '.join(missing)}")
    if not isinstance(data["T"], int) or isinstance(data["T"], bool):
        raise ValueError(f"T must be an integer, got {data['T']!r}")
    fields: dict = {
        "variant": _coerce_variant(data["variant"]),
        "T": data["T"],
        "s0": parse_exact(data["s0"]),
    }
    for name in _VECTOR_FIELDS:
        raw = data[name]
        if not isinstance(raw, list):
            raise ValueError(f"{name} must be a list")
        fields[name] = tuple(parse_exact(v) for v in raw)
    return Instance(**fields)


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_json_dict(inst), sort_keys=True, indent=2) + "\n"


def parse_instance(text: str) -> Instance:
    return instance_from_json_dict(json.loads(text))


def solution_to_json_dict(sol: Solution) -> dict:
    return {
        "x": [format_exact(v) for v in sol.x],
        "y": [format_exact(v) for v in sol.y],
        "s": [format_exact(v) for v in sol.s],
        "w": [format_exact(v) for v in sol.w],
        "z": [format_exact(v) for v in sol.z],
        "objective": format_exact(sol.objective),
    }


def solution_from_json_dict(data: dict) -> Solution:
    if not isinstance(data, dict):
        raise ValueError("solution JSON must be an object")
    missing = [k for k in ("x", "y", "s", "w", "z", "objective")
               if k not in data]
    if missing:
        raise ValueError(f"solution JSON missing keys: {', '.join(missing)}")
    vecs = {}
    for name in ("x", "y", "s", "w", "z"):
        raw = data[name]
        if not isinstance(raw, list):
            raise ValueError(f"{name} must be a list")
        vecs[name] = tuple(parse_exact(v) for v in raw)
    return Solution(objective=parse_exact(data["objective"]), **vecs)


def serialize_solution(sol: Solution) -> str:
    return json.dumps(solution_to_json_dict(sol), sort_keys=True, indent=2) + "\n"


def parse_solution(text: str) -> Solution:
    return solution_from_json_dict(json.loads(text))
