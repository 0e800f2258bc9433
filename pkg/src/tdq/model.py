"""System parameters, regime classification and the time maps.

Three Schrodinger systems share one parameter set ``(upsilon, omega)``:

* TQ: ``H = P^2/2 - (upsilon/2) D + omega^2 X^2 / 2`` (time independent)
* TM: ``H = exp(chi) P^2/2 + omega^2 exp(-chi) X^2/2`` with ``chi = upsilon (t - t0)``
* TO: ``H = P^2/2 + omega^2 X^2 / (2 tau^2)`` with ``tau = 1 + upsilon (t' - t0')``

TM and TO are linked by ``t' - t0' = (exp(chi) - 1) / upsilon`` so that
``tau = exp(chi)``.  Units have hbar = m = 1.

All public time arguments in this package are *elapsed* times, i.e.
``t' - t0'`` for TO and ``t - t0`` for TM/TQ.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: relative tolerance used to detect the critical regime
CRITICAL_RTOL = 1e-12


class Regime(str, enum.Enum):
    OVER = "over"
    CRITICAL = "critical"
    UNDER = "under"


class Sign(str, enum.Enum):
    POS = "pos"
    NEG = "neg"


class SystemKind(str, enum.Enum):
    TO = "to"
    TM = "tm"
    TQ = "tq"


def classify_regime(upsilon, omega, rtol=CRITICAL_RTOL):
    """Return ``(regime, delta)`` with ``delta = sqrt(|1 - 4 omega^2 / upsilon^2|)``.

    Critical is reported when ``|upsilon^2 - 4 omega^2| <= rtol * upsilon^2``,
    and ``delta`` is then exactly zero.
    """
    upsilon = float(upsilon)
    omega = float(omega)
    if upsilon == 0.0 or not math.isfinite(upsilon):
        raise DomainError(f"upsilon must be finite and nonzero, got {upsilon!r}")
    if not omega > 0.0 or not math.isfinite(omega):
        raise DomainError(f"omega must be finite and > 0, got {omega!r}")
    u2 = upsilon * upsilon
    gap = u2 - 4.0 * omega * omega
    if abs(gap) <= rtol * u2:
        return Regime.CRITICAL, 0.0
    delta = math.sqrt(abs(gap) / u2)
    return (Regime.OVER if gap > 0 else Regime.UNDER), delta


@dataclass(frozen=True)
class SystemSpec:
    """Physical parameter set shared by the TO, TM and TQ equations.

    Use :meth:`create` rather than the constructor; it validates the
    parameters and fills in ``regime``, ``sign`` and ``delta``.
    """

    upsilon: float
    omega: float
    t0: float
    regime: Regime
    sign: Sign
    delta: float

    @classmethod
    def create(cls, upsilon, omega, t0=0.0, regime=None):
        """Validate parameters and classify.

        Passing ``regime`` forces the classification (useful when
        ``upsilon^2`` is only approximately ``4 omega^2``).  A forced
        critical regime sets ``delta = 0``.
        """
        found, delta = classify_regime(upsilon, omega)
        if regime is not None:
            regime = Regime(regime)
            if regime is Regime.CRITICAL:
                delta = 0.0
            elif found is Regime.CRITICAL or regime is not found:
                raise DomainError(
                    f"cannot force regime {regime.value} for upsilon={upsilon}, "
                    f"omega={omega} (classified {found.value})")
            found = regime
        sign = Sign.POS if upsilon > 0 else Sign.NEG
        return cls(float(upsilon), float(omega), float(t0), found, sign, float(delta))

    @property
    def abs_upsilon(self):
        return abs(self.upsilon)

    @property
    def case(self):
        return (self.regime, self.sign)

    def to_domain_end(self):
        """Supremum of ``t' - t0'`` for the TO system (``inf`` when upsilon > 0)."""
        return math.inf if self.upsilon > 0 else 1.0 / self.abs_upsilon


@dataclass(frozen=True)
class TimeCoord:
    """A time in the native variable of one system (elapsed since t0 / t0')."""

    kind: SystemKind
    t: float


def tm_to_to_time(spec, t):
    """Map elapsed TM/TQ time ``t - t0`` to elapsed TO time ``t' - t0'``."""
    # expm1 keeps small offsets exact
    return np.expm1(spec.upsilon * np.asarray(t, dtype=float)) / spec.upsilon


def to_to_tm_time(spec, t_prime):
    """Inverse of :func:`tm_to_to_time`."""
    return np.log(tau_of(spec, t_prime)) / spec.upsilon


def tau_of(spec, t_prime):
    """``tau = 1 + upsilon (t' - t0')``; raises :class:`DomainError` if ``tau <= 0``."""
    tau = 1.0 + spec.upsilon * np.asarray(t_prime, dtype=float)
    if np.any(~(tau > 0.0)):
        raise DomainError(
            f"TO time outside [0, {spec.to_domain_end()}) for upsilon={spec.upsilon}: "
            "tau = 1 + upsilon (t' - t0') must stay > 0")
    return tau[()] if tau.ndim == 0 else tau


def chi_of(spec, t):
    """``chi = upsilon (t - t0)``."""
    chi = spec.upsilon * np.asarray(t, dtype=float)
    return chi[()] if chi.ndim == 0 else chi


def check_time(spec, kind, t):
    """Validate an elapsed time for ``kind``; return it as float/array."""
    kind = SystemKind(kind)
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("time must be finite")
    if kind is SystemKind.TO:
        if np.any(t < 0.0):
            raise DomainError("TO time t' - t0' must be >= 0")
        tau_of(spec, t)
    return t[()] if t.ndim == 0 else t
