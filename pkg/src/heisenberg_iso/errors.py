"""Exception hierarchy. The CLI maps these onto exit codes."""


class HeisenbergError(Exception):
    """Base class for all library errors."""


class DimensionError(HeisenbergError, ValueError):
    """Operands live in Heisenberg groups of different dimension."""


class DomainError(HeisenbergError, ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(HeisenbergError, ValueError):
    """A radial set or profile document violates its invariants."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class QuadratureError(HeisenbergError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class InvariantError(HeisenbergError, AssertionError):
    """A mathematical invariant failed numerically (an implementation bug)."""
