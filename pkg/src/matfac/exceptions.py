"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operands have incompatible or invalid dimensions."""


class ValidationError(ValueError):
    """A numeric precondition failed (asymmetry, insufficient sample, ...)."""


class ConfigError(ValueError):
    """A configuration field is out of its admissible range."""


class ParseError(ValueError):
    """An input file could not be parsed."""
