class CortexError(Exception):
    """Base class for every error raised by nilpotent_cortex."""


class DimensionError(CortexError, ValueError):
    """Vector, covector or polynomial arity does not match."""


class ClassError(CortexError):
    """The algebra is not two-step nilpotent."""


class OutOfLayerError(CortexError, ValueError):
    """The covector lies outside the layer z_1 != 0."""


class MembershipError(CortexError, ValueError):
    """The target covector is not on the cortex variety."""


class DegenerateStratumError(CortexError, ValueError):
    """The closed-form witness schedule does not reach the target."""


class ParseError(CortexError, ValueError):
    """Malformed structure-constants file, covector or rational string."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
