"""Real and complex solutions of the auxiliary oscillator equation.

With ``tau = 1 + upsilon (t' - t0')`` the equation
``gamma'' + omega^2 / tau^2 gamma = 0`` becomes the Euler equation
``w''(s) + A s^-2 w(s) = 0`` with ``A = omega^2 / upsilon^2``, whose
solutions are ``s^k`` with ``k = (1 +- sigma Delta) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateError, DomainError
from .model import CRITICAL_RTOL, Regime, tau_of


def _positive(s):
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0.0)):
        raise DomainError("Euler solutions are defined for s > 0 only")
    return s


@dataclass(frozen=True)
class RealBasis:
    """Two real solutions of ``w'' + A w / s^2 = 0`` on ``s > 0``.

    ``dw1`` and ``dw2`` are derivatives with respect to ``s``.  The
    Wronskian ``w1 dw2 - dw1 w2`` equals ``wronskian_const`` for all s.
    """

    regime: Regime
    delta: float
    w1: Callable
    w2: Callable
    dw1: Callable
    dw2: Callable
    wronskian_const: float

    def wronskian(self, s):
        return self.w1(s) * self.dw2(s) - self.dw1(s) * self.w2(s)


def euler_basis(A, rtol=CRITICAL_RTOL, regime=None):
    """Real solution pair of the Euler equation for coefficient ``A``.

    The case split follows the sign of the discriminant ``1 - 4A``:

    * ``1 - 4A > 0``: ``sqrt(s) exp(-+ (Delta/2) ln s)``, Wronskian ``Delta``
    * ``1 - 4A = 0``: ``sqrt(s)``, ``sqrt(s) ln s``, Wronskian ``1``
    * ``1 - 4A < 0``: ``sqrt(s) cos``, ``sqrt(s) sin`` of ``(Delta/2) ln s``,
      Wronskian ``Delta / 2``

    ``regime`` overrides the discriminant test.
    """
    disc = 1.0 - 4.0 * float(A)
    if regime is None:
        if abs(disc) <= rtol * max(1.0, 4.0 * abs(A)):
            regime = Regime.CRITICAL
        else:
            regime = Regime.OVER if disc > 0 else Regime.UNDER
    regime = Regime(regime)
    d = 0.0 if regime is Regime.CRITICAL else math.sqrt(abs(disc))
    h = 0.5 * d

    if regime is Regime.OVER:
        # s^k with k = (1 -+ Delta)/2
        k1, k2 = 0.5 - h, 0.5 + h

        def w1(s):
            return _positive(s) ** k1

        def w2(s):
            return _positive(s) ** k2

        def dw1(s):
            return k1 * _positive(s) ** (k1 - 1.0)

        def dw2(s):
            return k2 * _positive(s) ** (k2 - 1.0)

        wc = d
    elif regime is Regime.CRITICAL:

        def w1(s):
            return np.sqrt(_positive(s))

        def w2(s):
            s = _positive(s)
            return np.sqrt(s) * np.log(s)

        def dw1(s):
            return 0.5 / np.sqrt(_positive(s))

        def dw2(s):
            s = _positive(s)
            return (0.5 * np.log(s) + 1.0) / np.sqrt(s)

        wc = 1.0
    else:

        def w1(s):
            s = _positive(s)
            return np.sqrt(s) * np.cos(h * np.log(s))

        def w2(s):
            s = _positive(s)
            return np.sqrt(s) * np.sin(h * np.log(s))

        def dw1(s):
            s = _positive(s)
            L = np.log(s)
            return (0.5 * np.cos(h * L) - h * np.sin(h * L)) / np.sqrt(s)

        def dw2(s):
            s = _positive(s)
            L = np.log(s)
            return (0.5 * np.sin(h * L) + h * np.cos(h * L)) / np.sqrt(s)

        wc = h
    return RealBasis(regime, d, w1, w2, dw1, dw2, wc)


@dataclass(frozen=True)
class NormalizedPair:
    """``gamma_j(t') = c_j w_j(tau)`` with unit Wronskian in ``t'``."""

    basis: RealBasis
    upsilon: float
    c1: float
    c2: float

    def _tau(self, t_prime):
        tau = 1.0 + self.upsilon * np.asarray(t_prime, dtype=float)
        return _positive(tau)

    def gamma1(self, t_prime):
        return self.c1 * self.basis.w1(self._tau(t_prime))

    def gamma2(self, t_prime):
        return self.c2 * self.basis.w2(self._tau(t_prime))

    def gamma1_dot(self, t_prime):
        return self.c1 * self.upsilon * self.basis.dw1(self._tau(t_prime))

    def gamma2_dot(self, t_prime):
        return self.c2 * self.upsilon * self.basis.dw2(self._tau(t_prime))

    def wronskian(self, t_prime):
        return (self.gamma1(t_prime) * self.gamma2_dot(t_prime)
                - self.gamma1_dot(t_prime) * self.gamma2(t_prime))


def normalize_pair(spec, basis=None):
    """Scale an Euler basis so that ``gamma1 gamma2' - gamma1' gamma2 = 1``.

    Since ``d/dt' = upsilon d/dtau`` the Wronskian in ``t'`` is
    ``c1 c2 upsilon W_tau``.  We take ``c1 = sqrt(1 / (|upsilon| W_tau))``
    and ``c2 = sign(upsilon) c1``, which reproduces the quoted constants
    ``c1 = c2 = sqrt(1/(upsilon Delta))`` (over-damped, upsilon > 0) and
    ``c1 = -c2 = sqrt(1/(|upsilon| Delta))`` (over-damped, upsilon < 0).
    """
    if basis is None:
        basis = euler_basis((spec.omega / spec.upsilon) ** 2, regime=spec.regime)
    wc = basis.wronskian_const
    if not wc > 0.0:
        raise DegenerateError(f"basis Wronskian must be positive, got {wc}")
    c1 = math.sqrt(1.0 / (spec.abs_upsilon * wc))
    c2 = math.copysign(c1, spec.upsilon)
    return NormalizedPair(basis, spec.upsilon, c1, c2)


@dataclass(frozen=True)
class XiSolution:
    """Complex solution ``xi(t')`` with ``W(xi, conj(xi)) = -i``."""

    xi: Callable
    xi_dot: Callable

    def wronskian(self, t_prime):
        x = self.xi(t_prime)
        xd = self.xi_dot(t_prime)
        return x * np.conj(xd) - xd * np.conj(x)


def xi_from_pair(pair):
    """``xi = sqrt(1/2) (gamma1 + i gamma2)``."""
    r = math.sqrt(0.5)
    return XiSolution(
        xi=lambda tp: r * (pair.gamma1(tp) + 1j * pair.gamma2(tp)),
        xi_dot=lambda tp: r * (pair.gamma1_dot(tp) + 1j * pair.gamma2_dot(tp)),
    )


def xi_closed_form(spec):
    """The tabulated closed-form ``xi`` and ``d xi / dt'`` for ``spec``."""
    from .timefuncs import to_row

    def xi(tp):
        tau = tau_of(spec, tp)
        return to_row(spec, tau, np.log(tau))["xi"]

    def xi_dot(tp):
        tau = tau_of(spec, tp)
        return to_row(spec, tau, np.log(tau))["xi_dot"]

    return XiSolution(xi, xi_dot)
