"""Exception hierarchy shared by all cavity2deg modules.

Every library error derives from :class:`Cavity2degError` so callers (and the
CLI exit-code mapping) can distinguish our failures from genuine bugs.
"""

from __future__ import annotations

__all__ = [
    "Cavity2degError",
    "ConfigError",
    "UnitModeError",
    "DomainError",
    "PreconditionError",
    "InstabilityError",
    "PoleError",
    "DegenerateModeError",
    "ConvergenceError",
]


class Cavity2degError(Exception):
    """Base class for all cavity2deg errors."""


class ConfigError(Cavity2degError):
    """Malformed configuration input (bad key, bad value, bad sweep syntax)."""


class UnitModeError(Cavity2degError):
    """A dimensionful quantity was requested from a dimensionless (ratio) config."""


class DomainError(Cavity2degError):
    """An argument lies outside the mathematical domain of the operation."""


class PreconditionError(Cavity2degError):
    """A structural precondition on the inputs is violated."""


class InstabilityError(Cavity2degError):
    """Operation requires a stable ground state but the coupling is critical or beyond."""


class PoleError(Cavity2degError):
    """Evaluation exactly on a pole or past a divergence of the theory."""


class DegenerateModeError(Cavity2degError):
    """A normal mode with zero frequency makes the requested quantity ill-defined."""


class ConvergenceError(Cavity2degError):
    """An iterative scheme failed to reach its tolerance within the sweep budget."""
