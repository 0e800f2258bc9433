"""Closed-form states and observables for three related time-dependent
quadratic Schrödinger systems (TO, TM, TQ), with numerical oracles."""

from .errors import (ConventionError, DegenerateError, DomainError, GridError,
                     OverflowGuardError, TailError, TDQError, UnsupportedCase)
from .model import Regime, Sign, SystemKind, SystemSpec, classify_regime

__all__ = [
    "ConventionError", "DegenerateError", "DomainError", "GridError", "OverflowGuardError",
    "TailError", "TDQError", "UnsupportedCase", "Regime", "Sign", "SystemKind", "SystemSpec",
    "classify_regime",
]
__version__ = "0.1.0"
