"""Exception types shared across the library."""


class IHopfError(Exception):
    """Base class for all library errors."""


class DivisionByZero(IHopfError, ZeroDivisionError):
    """Division or inversion by the zero rational function."""


class PoleAtPoint(IHopfError):
    """Specialization requested at a pole of the rational function."""


class NegativeArgument(IHopfError, ValueError):
    """A q-combinatorial primitive received a negative argument."""


class ParseError(IHopfError, ValueError):
    """Malformed text input for a scalar or an algebra element."""


class TruncationExceeded(IHopfError):
    """A computation left the configured weight-height truncation."""


class NegativeTorusExponent(IHopfError):
    """Negative torus exponent produced while in non-invertible mode."""


class UnsupportedLocalType(IHopfError):
    """Local Cartan integer c_{i,tau(i)} outside {2, 0, -1}."""


class WrongLocalType(IHopfError):
    """Operation asked for a local rank-one type it does not support."""


class NonReducedWord(IHopfError):
    """A word of simple reflections failed the reducedness check."""


class InadmissibleParameters(IHopfError, ValueError):
    """Root-vector parameters outside the admissible range."""


class NonUniqueSolution(IHopfError):
    """An intertwining linear system did not have a unique solution."""


class ConfigError(IHopfError, ValueError):
    """Invalid scenario configuration."""
