"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A numerical parameter is outside its admissible range."""


class ContractError(TypeError):
    """An operation received a field in the wrong space or on the wrong grid."""


class SingularMultiplierError(ValueError):
    """A Fourier multiplier or bilinear symbol is not finite on the grid."""


class DomainError(ValueError):
    """Arguments violate a geometric constraint (e.g. triangle inequality)."""


class DivergenceError(RuntimeError):
    """The time integrator produced non-finite values.

    The last finite state is attached as ``last_good`` so callers can
    checkpoint it.
    """

    def __init__(self, message, last_good=None):
        super().__init__(message)
        self.last_good = last_good


class ConfigError(ValueError):
    """A run configuration is malformed; ``key`` and ``line`` locate the problem."""

    def __init__(self, message, key=None, line=None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if key is not None:
            loc.append(f"key '{key}'")
        super().__init__(f"{': '.join([', '.join(loc), message]) if loc else message}")
        self.key = key
        self.line = line


class CheckpointError(IOError):
    """Base class for checkpoint format problems."""


class BadMagicError(CheckpointError):
    pass


class VersionMismatchError(CheckpointError):
    pass


class TruncatedFileError(CheckpointError):
    pass
