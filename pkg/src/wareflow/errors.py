"""Exception types shared across the solver suite."""


class WarehouseError(Exception):
    """Base class for every domain error raised by this package."""


class InvalidInstance(WarehouseError, ValueError):
    """Instance data violates a structural invariant."""


class NegativeBound(InvalidInstance):
    """A bound, fixed cost, or the initial stock is negative."""


class LowerExceedsUpper(InvalidInstance):
    """A lower bound exceeds its matching upper bound."""


class WrongVectorLength(InvalidInstance):
    """A per-period vector does not have length T, or T is not positive."""


class WP3ShapeViolation(InvalidInstance):
    """Data breaks the restricted shape required by the wp3 variant."""


class PeriodOutOfRange(WarehouseError, IndexError):
    """A period index lies outside 1..T."""


class WrongVariant(WarehouseError, ValueError):
    """The operation does not apply to this problem variant."""


class Infeasible(WarehouseError):
    """No feasible trading plan exists."""


class NonIntegralData(WarehouseError, ValueError):
    """An operation that requires integral data saw a proper fraction."""


class TerminalStockMismatch(WarehouseError, ValueError):
    """The final stock does not return to the initial stock."""


class IndexOutOfRange(WarehouseError, IndexError):
    """A pair index does not address an existing flow pair."""


class DeltaOutOfRange(WarehouseError, ValueError):
    """A flow reduction is negative or larger than the pair it reduces."""


class EpsilonOutOfRange(WarehouseError, ValueError):
    """The approximation parameter lies outside the open interval (0, 1)."""


class NoPositiveBounds(WarehouseError, ValueError):
    """Every trade bound is zero, so no scaling unit exists."""


class NotAPath(WarehouseError, ValueError):
    """A solution does not trace a source-to-sink path of the network."""


class EmptyInput(WarehouseError, ValueError):
    """An input collection that must be nonempty is empty."""


class InvalidArgument(WarehouseError, ValueError):
    """A parameter value is outside its documented domain."""
