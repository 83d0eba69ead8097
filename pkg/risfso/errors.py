class RisFsoError(Exception):
    """Base class for every error raised by risfso."""


class DomainError(RisFsoError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleError(RisFsoError, ValueError):
    """A Gamma function pole was hit, or two pole families collide."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class ConvergenceError(RisFsoError, ArithmeticError):
    """A series, quadrature or contour integral failed to converge."""


class UnsupportedError(RisFsoError):
    """The requested evaluation path cannot handle this instance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class MomentMatchingError(RisFsoError, ValueError):
    """Gamma moment matching is undefined for the given turbulence regime."""


class ConfigError(RisFsoError, ValueError):
    """Invalid sweep configuration; carries ``(field_path, message)`` pairs."""

    def __init__(self, diagnostics):
        if isinstance(diagnostics, str):
            diagnostics = [("", diagnostics)]
        self.diagnostics = list(diagnostics)
        lines = [
            f"{path}: {message}" if path else message
            for path, message in self.diagnostics
        ]
        super().__init__("; ".join(lines))


__all__ = [
    "RisFsoError",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "UnsupportedError",
    "MomentMatchingError",
    "ConfigError",
]
