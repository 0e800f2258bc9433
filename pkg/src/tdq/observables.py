"""Closed-form expectation values, uncertainties and classical dynamics.

Within each regime the TO, TM and TQ rows share one bracket in the
logarithmic time ``L`` (``ln tau`` for TO, ``chi`` for TM and TQ) and
differ only by a prefactor:

=========  ============  ==============  ==========
system     <x>, (Dx)^2    <p>, (Dp)^2     ``L``
=========  ============  ==============  ==========
TO         sqrt(tau), tau 1/sqrt(tau), 1/tau   ln tau
TM         e^(chi/2), e^chi  e^(-chi/2), e^-chi  chi
TQ         1, 1          1, 1            chi
=========  ============  ==============  ==========

The mean rows carry ``Upsilon`` explicitly and hold for either sign.  The
variance rows are written for ``Upsilon > 0``; for ``Upsilon < 0`` they
are evaluated with ``|Upsilon|`` and ``-theta``.

Two printed rows are corrected here: the cosine bracket of the critical
TM momentum variance reads ``(1 + chi/2)`` like its neighbours, and the
``s^-2`` bracket of the overdamped uncertainty product carries
``(Delta + cos theta) sinh``.  Both are fixed by requiring the product to
equal ``(Dx)^2 (Dp)^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError
from .model import Regime, SystemKind, check_time, chi_of, tau_of, tm_to_to_time

MEAN_SOURCES = ("closed_form", "quadrature")


def _log_time(spec, kind, t):
    """``(L, e^L)`` for elapsed time ``t`` of the given system."""
    kind = SystemKind(kind)
    t = check_time(spec, kind, t)
    if kind is SystemKind.TO:
        tau = tau_of(spec, t)
        return np.log(tau), tau
    chi = chi_of(spec, t)
    return chi, np.exp(chi)


def _scale(kind, growth):
    """Prefactor base: ``growth`` for TO and TM, 1 for TQ."""
    return np.ones_like(growth) if SystemKind(kind) is SystemKind.TQ else growth


# --- means --------------------------------------------------------------------

def mean_x(spec, kind, x0, p0, t):
    """Position expectation of a coherent or squeezed state."""
    L, g = _log_time(spec, kind, t)
    ups, d = spec.upsilon, spec.delta
    if spec.regime is Regime.OVER:
        ch, sh = np.cosh(0.5 * d * L), np.sinh(0.5 * d * L)
        body = x0 / d * (d * ch - sh) + 2.0 * p0 / (ups * d) * sh
    elif spec.regime is Regime.CRITICAL:
        body = x0 * (1.0 - 0.5 * L) + p0 / ups * L
    else:
        c, s = np.cos(0.5 * d * L), np.sin(0.5 * d * L)
        body = x0 / d * (d * c - s) + 2.0 * p0 / (ups * d) * s
    return np.sqrt(_scale(kind, g)) * body


def mean_p(spec, kind, x0, p0, t):
    """Momentum expectation of a coherent or squeezed state."""
    L, g = _log_time(spec, kind, t)
    ups, d, w2 = spec.upsilon, spec.delta, spec.omega ** 2
    if spec.regime is Regime.OVER:
        ch, sh = np.cosh(0.5 * d * L), np.sinh(0.5 * d * L)
        body = -2.0 * x0 * w2 / (ups * d) * sh + p0 / d * (d * ch + sh)
    elif spec.regime is Regime.CRITICAL:
        body = -x0 * ups / 4.0 * L + p0 * (1.0 + 0.5 * L)
    else:
        c, s = np.cos(0.5 * d * L), np.sin(0.5 * d * L)
        body = -2.0 * x0 * w2 / (ups * d) * s + p0 / d * (d * c + s)
    return body / np.sqrt(_scale(kind, g))


# --- variances and product ----------------------------------------------------

def _squeeze_args(spec, r, theta):
    if not r >= 0.0:
        raise DomainError(f"squeeze parameter r must be >= 0, got {r!r}")
    th = theta if spec.upsilon > 0 else -theta
    return math.exp(2.0 * r), math.exp(-2.0 * r), th


def var_x(spec, kind, r, theta, t):
    """Position variance for squeeze ``(r, theta)``; ``r = 0`` is coherent."""
    L, g = _log_time(spec, kind, t)
    a, d = spec.abs_upsilon, spec.delta
    s2, si2, th = _squeeze_args(spec, r, theta)
    c, s = math.cos(th), math.sin(th)
    if spec.regime is Regime.OVER:
        ch, sh = np.cosh(d * L), np.sinh(d * L)
        body = (s2 * (ch - sh * c + s) + si2 * (ch + sh * c - s)) / (2.0 * a * d)
    elif spec.regime is Regime.CRITICAL:
        body = (s2 * ((1 + L * L) + (1 - L * L) * c + 2 * L * s)
                + si2 * ((1 + L * L) - (1 - L * L) * c - 2 * L * s)) / (4.0 * a)
    else:
        cz = np.cos(d * L - th)
        body = (s2 * (1 + cz) + si2 * (1 - cz)) / (2.0 * a * d)
    return _scale(kind, g) * body


def var_p(spec, kind, r, theta, t):
    """Momentum variance for squeeze ``(r, theta)``."""
    L, g = _log_time(spec, kind, t)
    a, d = spec.abs_upsilon, spec.delta
    s2, si2, th = _squeeze_args(spec, r, theta)
    c, s = math.cos(th), math.sin(th)
    if spec.regime is Regime.OVER:
        ch, sh = np.cosh(d * L), np.sinh(d * L)
        dd = 1.0 + d * d
        body = a / (8.0 * d) * (
            s2 * (dd * (ch - sh * c) + (1 - d * d) * s + 2 * d * (sh - ch * c))
            + si2 * (dd * (ch + sh * c) - (1 - d * d) * s + 2 * d * (sh + ch * c)))
    elif spec.regime is Regime.CRITICAL:
        h = 1.0 + 0.5 * L
        body = a / 4.0 * (s2 * ((0.25 + h * h) + (0.25 - h * h) * c + h * s)
                          + si2 * ((0.25 + h * h) - (0.25 - h * h) * c - h * s))
    else:
        z = d * L - th
        cz, sz = np.cos(z), np.sin(z)
        body = a / (8.0 * d) * (
            s2 * ((1 + d * d) + (1 - d * d) * cz - 2 * d * sz)
            + si2 * ((1 + d * d) - (1 - d * d) * cz + 2 * d * sz))
    return body / _scale(kind, g)


def product_table5(spec, kind, r, theta, t):
    """The tabulated uncertainty product ``1/4 {1 + (...)^2}``."""
    L, _ = _log_time(spec, kind, t)
    d = spec.delta
    s2, si2, th = _squeeze_args(spec, r, theta)
    c, s = math.cos(th), math.sin(th)
    if spec.regime is Regime.OVER:
        ch, sh = np.cosh(d * L), np.sinh(d * L)
        inner = (s2 * (s + (1 - d * c) * ch + (d - c) * sh)
                 + si2 * (-s + (1 + d * c) * ch + (d + c) * sh)) / (2.0 * d)
    elif spec.regime is Regime.CRITICAL:
        q = 0.5 * (1 + L) ** 2
        k = 0.5 * (1 - 2 * L - L * L)
        inner = (s2 * (q + (1 + L) * s + k * c) + si2 * (q - (1 + L) * s - k * c)) / 2.0
    else:
        z = d * L - th
        cz, sz = np.cos(z), np.sin(z)
        inner = (s2 * (1 + cz - d * sz) + si2 * (1 - cz + d * sz)) / (2.0 * d)
    return 0.25 * (1.0 + inner * inner)


def uncertainty_product(spec, kind, r, theta, t):
    """``(Dx)^2 (Dp)^2`` from the variance rows."""
    return var_x(spec, kind, r, theta, t) * var_p(spec, kind, r, theta, t)


# --- classical dynamics ------------------------------------------------------

@dataclass(frozen=True)
class ClassicalState:
    x: float
    p: float
    t: float


def classical_rhs(spec, kind, state):
    """Hamilton's equations ``(dx/dt, dp/dt)`` in the system's own time."""
    kind = SystemKind(kind)
    t = check_time(spec, kind, state.t)
    w2 = spec.omega ** 2
    x, p = state.x, state.p
    if kind is SystemKind.TO:
        tau = tau_of(spec, t)
        return p, -w2 * x / (tau * tau)
    if kind is SystemKind.TM:
        e = np.exp(chi_of(spec, t))
        return e * p, -w2 * x / e
    half = 0.5 * spec.upsilon
    return p - half * x, -w2 * x + half * p


# --- series and curve features ---------------------------------------------------

@dataclass(frozen=True)
class ObservablePoint:
    t: float
    x_mean: float
    p_mean: float
    x_var: float
    p_var: float
    product: float
    source: str = "closed_form"


@dataclass
class ObservableSeries:
    """Observables sampled at a sequence of elapsed times."""

    kind: SystemKind
    points: list

    def column(self, name):
        return np.array([getattr(pt, name) for pt in self.points])


def observable_point(spec, kind, x0, p0, r, theta, t):
    xv = float(var_x(spec, kind, r, theta, t))
    pv = float(var_p(spec, kind, r, theta, t))
    return ObservablePoint(float(t), float(mean_x(spec, kind, x0, p0, t)),
                           float(mean_p(spec, kind, x0, p0, t)), xv, pv, xv * pv)


def closed_form_series(spec, kind, x0, p0, times, r=0.0, theta=0.0):
    kind = SystemKind(kind)
    return ObservableSeries(kind, [observable_point(spec, kind, x0, p0, r, theta, t)
                                   for t in times])


def to_time_of(spec, kind, t):
    """Elapsed TO time ``t' - t0'`` corresponding to ``t`` of system ``kind``."""
    return t if SystemKind(kind) is SystemKind.TO else tm_to_to_time(spec, t)


def _bracketed_roots(f, grid, xtol):
    vals = np.array([f(t) for t in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(float(bisect(f, grid[i], grid[i + 1], xtol=xtol)))
    return roots


def zero_crossings(spec, kind, x0, p0, t_min, t_max, samples=4001, xtol=1e-10):
    """Times in ``[t_min, t_max]`` where ``<x>`` changes sign."""
    grid = np.linspace(t_min, t_max, samples)
    return _bracketed_roots(lambda t: float(mean_x(spec, kind, x0, p0, t)), grid, xtol)


def local_minima(spec, kind, x0, p0, t_min, t_max, samples=4001, xtol=1e-10):
    """``(t, <x>)`` at interior local minima, located where ``d<x>/dt = 0``.

    The derivative is ``classical_rhs``'s ``dx/dt``, so no differencing is
    involved.
    """
    def slope(t):
        st = ClassicalState(float(mean_x(spec, kind, x0, p0, t)),
                            float(mean_p(spec, kind, x0, p0, t)), t)
        return float(classical_rhs(spec, kind, st)[0])

    grid = np.linspace(t_min, t_max, samples)
    out = []
    for t in _bracketed_roots(slope, grid, xtol):
        h = 1e-4 * max(1.0, abs(t))
        if slope(t - h) < 0.0 < slope(t + h):
            out.append((t, float(mean_x(spec, kind, x0, p0, t))))
    return out
