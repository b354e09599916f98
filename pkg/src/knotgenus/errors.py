"""Exception taxonomy shared across the package."""

from __future__ import annotations

__all__ = [
    "KnotgenusError",
    "DiagramError",
    "NonRealizableError",
    "TableError",
    "LedgerContradiction",
]


class KnotgenusError(Exception):
    """Base class for all package errors."""


class DiagramError(KnotgenusError, ValueError):
    """Malformed or non-planar diagram data."""


class NonRealizableError(DiagramError):
    """A DT code admitting no planar realization."""


class TableError(KnotgenusError, ValueError):
    """Reference-table rows that fail validation; carries line numbers."""

    def __init__(self, message: str, lines: tuple[int, ...] = ()):
        super().__init__(message)
        self.lines = lines


class LedgerContradiction(KnotgenusError):
    """Interval propagation produced an empty interval; carries a trace."""

    def __init__(self, message: str, trace: tuple[str, ...] = ()):
        super().__init__(message)
        self.trace = trace
