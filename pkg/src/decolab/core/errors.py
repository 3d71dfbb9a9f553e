"""Exception hierarchy shared by every decolab module."""

from __future__ import annotations

from typing import Optional


EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_STORAGE = 4


class DecolabError(Exception):
    """Base class for all decolab failures; carries the CLI exit code."""

    exit_code = 1

    def with_context(self, context: str) -> "DecolabError":
        """Prefix the message with scenario context, keeping the class."""

        self.args = (f"{context}: {self.args[0] if self.args else ''}",) + tuple(self.args[1:])
        return self


# ----------------------------------------------------------------------
# Configuration errors (exit 2)
# ----------------------------------------------------------------------
class ConfigError(DecolabError, ValueError):
    exit_code = EXIT_CONFIG

    def __init__(self, message: str, *, key: Optional[str] = None) -> None:
        super().__init__(message)
        self.key = key


class ParseError(ConfigError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnknownKey(ConfigError):
    def __init__(self, key: str, section: Optional[str] = None) -> None:
        where = f" in section [{section}]" if section else ""
        super().__init__(f"Unknown key '{key}'{where}", key=key)


class MissingKey(ConfigError):
    def __init__(self, key: str, section: Optional[str] = None) -> None:
        where = f" for experiment '{section}'" if section else ""
        super().__init__(f"Missing required key '{key}'{where}", key=key)


class ValidationError(ConfigError):
    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"Invalid value for '{key}': {message}", key=key)


# ----------------------------------------------------------------------
# Numerical errors (exit 3)
# ----------------------------------------------------------------------
class NumericError(DecolabError):
    exit_code = EXIT_NUMERIC


class GridTooCoarse(NumericError):
    pass


class GridTooNarrow(NumericError):
    pass


class BoundaryLeak(NumericError):
    pass


class GridMismatch(NumericError):
    pass


class ZeroNorm(NumericError):
    pass


class DimensionMismatch(NumericError):
    pass


class DegenerateState(NumericError):
    pass


class InvalidOverlap(NumericError):
    pass


class InvalidDensity(NumericError):
    pass


class RegimeError(NumericError):
    pass


class StabilityViolation(NumericError):
    pass


class TraceDrift(NumericError):
    pass


class NonHermitianInput(NumericError):
    pass


# ----------------------------------------------------------------------
# Storage errors (exit 4)
# ----------------------------------------------------------------------
class StorageError(DecolabError, OSError):
    exit_code = EXIT_STORAGE
