"""Exception types shared across the package."""


class MixvolError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(MixvolError):
    """Inputs disagree on the ambient dimension."""


class ZeroDirection(MixvolError):
    """A direction vector was zero."""


class LowerDimensional(MixvolError):
    """Operation requires a full-dimensional body."""


class DegenerateDenominator(MixvolError):
    """A ratio's denominator mixed volume vanished."""


class DegenerateInput(MixvolError):
    """Input body too degenerate for the requested check."""


class UnstablePerturbation(MixvolError):
    """Facet shift exceeds the combinatorial stability radius."""


class NonGeneric(MixvolError):
    """Random polynomial system failed a genericity requirement."""


class ZeroPolynomial(MixvolError):
    """The zero polynomial has no Newton polygon."""


class ParseError(MixvolError):
    """Malformed body file or rational literal."""


class ValidationError(MixvolError):
    """Body data violates a structural invariant."""


class UnsupportedDimension(MixvolError):
    """Requested dimension outside the supported range."""
