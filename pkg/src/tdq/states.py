"""Number, coherent and squeezed state wavefunctions.

Every state is a Hermite-Gaussian built on a complex *width function*
``w(t)`` (``xi`` for TO and TM, ``Xi_P`` for TQ) and its partner
``w_dot(t)`` (``xi_dot`` or ``Xi_X``), which satisfy
``w conj(w_dot) - w_dot conj(w) = -i``:

    psi_0 = (2 pi)^(-1/4) w^(-1/2) exp(i (w_dot / w) x^2 / 2)

so that ``(Delta x)^2 = |w|^2``.  Coherent states translate this packet
along the classical trajectory; squeezed states replace ``w`` by
``cosh(r) w + exp(i theta) sinh(r) conj(w)``, which has the same
Wronskian.

The trajectory is obtained from the conserved amplitude
``A = w p - w_dot x`` fixed at ``t = 0``; it does not use the tabulated
expectation values, which are checked against these states elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, GridError, OverflowGuardError, UnsupportedCase
from .model import Regime, Sign, SystemKind, check_time, chi_of, tau_of
from .timefuncs import Frame, frame

MAX_N = 60
DEFAULT_POINTS = 2001
DEFAULT_HALF_WIDTH = 10.0


@dataclass(frozen=True)
class Number:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"number state index must be a nonnegative int, got {self.n!r}")


@dataclass(frozen=True)
class Coherent:
    x0: float
    p0: float


@dataclass(frozen=True)
class Squeezed:
    x0: float
    p0: float
    r: float
    theta: float

    def __post_init__(self):
        if not self.r >= 0.0:
            raise DomainError(f"squeeze parameter r must be >= 0, got {self.r!r}")
        if not -math.pi < self.theta <= math.pi:
            raise DomainError(f"theta must lie in (-pi, pi], got {self.theta!r}")


Family = Union[Number, Coherent, Squeezed]


@dataclass(frozen=True)
class StateSpec:
    kind: SystemKind
    family: Family


@dataclass
class WavefunctionSample:
    """Complex wavefunction values on a uniform ascending grid."""

    x: np.ndarray
    psi: np.ndarray
    kind: SystemKind
    t: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.psi = np.asarray(self.psi, dtype=complex)
        check_grid(self.x)
        if self.psi.shape != self.x.shape:
            raise GridError("psi and x must have the same shape")

    @property
    def dx(self):
        return self.x[1] - self.x[0]


def check_grid(x, min_points=5):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < min_points:
        raise GridError(f"grid needs at least {min_points} points, got {x.size}")
    steps = np.diff(x)
    if not np.all(steps > 0) or np.ptp(steps) > 1e-9 * abs(steps[0]) + 1e-12 * np.max(np.abs(x)):
        raise GridError("grid must be uniform and ascending")
    return x


def is_printed_case(spec):
    return spec.case == (Regime.UNDER, Sign.POS)


# --- Hermite functions -----------------------------------------------------

def hermite(n, u):
    """Physicists' Hermite polynomial ``H_n(u)`` by the three-term recurrence."""
    u = np.asarray(u, dtype=float)
    h0 = np.ones_like(u)
    if n == 0:
        return h0
    h1 = 2.0 * u
    for k in range(1, n):
        h0, h1 = h1, 2.0 * u * h1 - 2.0 * k * h0
    return h1


def hermite_functions(n, u):
    """``H_k(u) exp(-u^2/2) / sqrt(2^k k!)`` for ``k = 0..n``, shape ``(n+1, len(u))``.

    Uses the normalized recurrence, so no factorials or powers of two
    are formed and the envelope keeps every term bounded.
    """
    if n > MAX_N:
        raise OverflowGuardError(f"Hermite order {n} exceeds supported maximum {MAX_N}")
    u = np.asarray(u, dtype=float)
    out = np.empty((n + 1,) + u.shape)
    out[0] = np.exp(-0.5 * u * u)
    if n >= 1:
        out[1] = math.sqrt(2.0) * u * out[0]
    for k in range(1, n):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * u * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out


# --- frames and trajectories -----------------------------------------------

def squeezed_frame(fr, r, theta):
    """Width pair for squeeze ``(r, theta)``; ``r = 0`` returns ``fr`` unchanged."""
    if r == 0.0:
        return fr
    c, s = math.cosh(r), math.sinh(r)
    e = np.exp(1j * theta)
    width = c * fr.width + e * s * np.conj(fr.width)
    width_dot = c * fr.width_dot + e * s * np.conj(fr.width_dot)
    # c > s keeps the bracket in the right half plane: principal angle is continuous
    arg = fr.arg + np.angle(c + s * np.exp(1j * (theta - 2.0 * fr.arg)))
    return Frame(width, width_dot, arg)


def conserved_amplitude(spec, kind, x0, p0):
    """``A = w(0) p0 - w_dot(0) x0``, constant along the motion."""
    f0 = frame(spec, kind, 0.0)
    return f0.width * p0 - f0.width_dot * x0


def trajectory(spec, kind, x0, p0, t):
    """Position and momentum expectation from the conserved amplitude."""
    amp = conserved_amplitude(spec, kind, x0, p0)
    fr = frame(spec, kind, t)
    x = -2.0 * np.imag(np.conj(fr.width) * amp)
    p = -2.0 * np.imag(np.conj(fr.width_dot) * amp)
    return x, p


# --- wavefunctions ---------------------------------------------------------

def _gaussian(fr, X, P, x):
    b = fr.width_dot / fr.width
    y = x - X
    pref = (2.0 * math.pi) ** -0.25 * np.abs(fr.width) ** -0.5 * np.exp(-0.5j * fr.arg)
    return pref * np.exp(0.5j * b * y * y + 1j * P * (x - 0.5 * X))


def _number(fr, n, x):
    mod = np.abs(fr.width)
    u = x / (math.sqrt(2.0) * mod)
    curv = np.real(fr.width_dot / fr.width)
    pref = (2.0 * math.pi) ** -0.25 * mod ** -0.5 * np.exp(-1j * (n + 0.5) * fr.arg)
    return pref * np.exp(0.5j * curv * x * x) * hermite_functions(n, u)[n]


def wavefunction(spec, state, t, x):
    """Values of ``state`` at elapsed time ``t`` on points ``x``."""
    kind = SystemKind(state.kind)
    t = float(check_time(spec, kind, t))
    x = np.asarray(x, dtype=float)
    fam = state.family
    fr = frame(spec, kind, t)
    if isinstance(fam, Number):
        return _number(fr, int(fam.n), x)
    X, P = trajectory(spec, kind, fam.x0, fam.p0, t)
    if isinstance(fam, Squeezed):
        fr = squeezed_frame(fr, fam.r, fam.theta)
    return _gaussian(fr, X, P, x)


def state_center_width(spec, state, t):
    """Center and standard deviation used to lay out the default grid."""
    kind = SystemKind(state.kind)
    fam = state.family
    fr = frame(spec, kind, t)
    if isinstance(fam, Number):
        return 0.0, float(np.abs(fr.width)) * math.sqrt(2 * fam.n + 1)
    X, _ = trajectory(spec, kind, fam.x0, fam.p0, t)
    if isinstance(fam, Squeezed):
        fr = squeezed_frame(fr, fam.r, fam.theta)
    return float(X), float(np.abs(fr.width))


def default_grid(center, sigma, points=DEFAULT_POINTS, half_width=DEFAULT_HALF_WIDTH):
    return np.linspace(center - half_width * sigma, center + half_width * sigma, points)


def oracle_grid(spec, state, t, min_points=DEFAULT_POINTS, kh=0.03,
                half_width=DEFAULT_HALF_WIDTH, max_points=400001):
    """Grid fine enough for 4th-order stencils on a chirped state.

    The largest wavenumber carried is bounded by ``|<p>| + 10 sigma_p``
    with ``sigma_p = |w_dot| sqrt(2n + 1)``; spacing is chosen so that
    ``k_max dx <= kh``.
    """
    kind = SystemKind(state.kind)
    fam = state.family
    fr = frame(spec, kind, t)
    if isinstance(fam, Number):
        k_max = half_width * float(np.abs(fr.width_dot)) * math.sqrt(2 * fam.n + 1)
    else:
        _, P = trajectory(spec, kind, fam.x0, fam.p0, t)
        if isinstance(fam, Squeezed):
            fr = squeezed_frame(fr, fam.r, fam.theta)
        k_max = abs(float(P)) + half_width * float(np.abs(fr.width_dot))
    center, sigma = state_center_width(spec, state, t)
    span = 2.0 * half_width * sigma
    points = int(math.ceil(span * k_max / kh)) + 1
    points = min(max(points, min_points), max_points)
    points += 1 - points % 2
    return default_grid(center, sigma, points=points, half_width=half_width)


def sample(spec, state, t, x=None, points=DEFAULT_POINTS):
    """Evaluate ``state`` on ``x`` (or on the default ``+-10 sigma`` grid)."""
    if x is None:
        x = default_grid(*state_center_width(spec, state, t), points=points)
    psi = wavefunction(spec, state, t, x)
    meta = {"derived_case": not is_printed_case(spec)}
    return WavefunctionSample(x, psi, SystemKind(state.kind), float(t), meta)


def number_state(spec, kind, n, t, x_grid=None):
    return sample(spec, StateSpec(SystemKind(kind), Number(n)), t, x_grid)


def coherent_state(spec, kind, x0, p0, t, x_grid=None):
    return sample(spec, StateSpec(SystemKind(kind), Coherent(x0, p0)), t, x_grid)


def squeezed_state(spec, kind, x0, p0, r, theta, t, x_grid=None):
    return sample(spec, StateSpec(SystemKind(kind), Squeezed(x0, p0, r, theta)), t, x_grid)


# --- squeeze geometry --------------------------------------------------------

@dataclass(frozen=True)
class SqueezeGeometry:
    """Width ``Q = (Delta x)^2``, phase curvature ``R/Q = dQ/dt' / Q`` and
    the center data ``X+``, ``X-(alpha, z)`` and ``Y-(alpha, theta)``."""

    Q: float
    R_over_Q: float
    Xplus: float
    Xminus: float
    Yminus: float


def squeeze_geometry(spec, kind, family, t):
    """Geometry of a coherent (``r = 0``) or squeezed state at time ``t``.

    The wavefunction has the form
    ``exp(-(x - X+)^2 / (4Q) + i [R x^2 / (4Q) + (x - X+/2) X- / (2Q)])``
    up to normalization.  ``Y-`` is the coefficient of ``sinh 2r`` in
    ``X- = X-(r=0) cosh 2r + Y- sinh 2r``.
    """
    kind = SystemKind(kind)
    t = float(check_time(spec, kind, t))
    r = getattr(family, "r", 0.0)
    theta = getattr(family, "theta", 0.0)
    fr = frame(spec, kind, t)
    sq = squeezed_frame(fr, r, theta)
    amp = conserved_amplitude(spec, kind, family.x0, family.p0)
    X, P = trajectory(spec, kind, family.x0, family.p0, t)
    Q = float(np.abs(sq.width) ** 2)
    rate = float(np.real(sq.width_dot * np.conj(sq.width)))
    Xminus = 2.0 * Q * P - 2.0 * rate * X
    Yminus = float(2.0 * np.real(np.exp(-1j * theta) * fr.width * amp))
    return SqueezeGeometry(Q, 2.0 * rate / Q, float(X), float(Xminus), Yminus)


# --- tabulated underdamped, positive-Upsilon forms ----------------------------------

def _under_pos_log_time(spec, kind, t):
    kind = SystemKind(kind)
    if spec.case != (Regime.UNDER, Sign.POS):
        raise UnsupportedCase("tabulated state formulas exist only for the underdamped, "
                              "positive-Upsilon systems")
    t = check_time(spec, kind, t)
    if kind is SystemKind.TO:
        tau = float(tau_of(spec, t))
        return math.log(tau), tau
    chi = float(chi_of(spec, t))
    return chi, math.exp(chi)


def _x_plus_minus(spec, kind, x0, p0, L, g):
    ups, d = spec.upsilon, spec.delta
    a = 1.0 if SystemKind(kind) is SystemKind.TQ else math.sqrt(g)
    c, s = math.cos(0.5 * d * L), math.sin(0.5 * d * L)
    xp = p0 * 2 * a / (ups * d) * s + x0 * a / d * (d * c - s)
    xm = p0 * 2 * a / (ups * d) * c - x0 * a / d * (c + d * s)
    return xp, xm


def _y_minus(spec, kind, x0, p0, theta, L, g):
    ups, d = spec.upsilon, spec.delta
    a = 1.0 if SystemKind(kind) is SystemKind.TQ else math.sqrt(g)
    z = 0.5 * d * L - theta
    return p0 * 2 * a / (ups * d) * math.cos(z) - x0 * a / d * (math.cos(z) - d * math.sin(z))


def printed_wavefunction(spec, state, t, x):
    """Tabulated underdamped, ``Upsilon > 0`` wavefunctions with corrections.

    Independent of the width-function construction; used as a cross-check.
    Corrections: the Gaussian envelope of the TO and TM number states is
    restored; the TQ coherent phase uses ``Upsilon Delta / 2`` (no
    ``exp(chi)``); the squeezed quartic-root denominator is the conjugate
    of its numerator; ``Q`` uses ``Delta L`` with ``L = ln tau`` or
    ``chi``; the TO ``Y-`` uses ``(Delta/2) ln tau`` and ``sqrt(tau)``.
    """
    kind = SystemKind(state.kind)
    L, g = _under_pos_log_time(spec, kind, t)
    ups, d = spec.upsilon, spec.delta
    x = np.asarray(x, dtype=float)
    gk = 1.0 if kind is SystemKind.TQ else g
    fam = state.family
    if isinstance(fam, Number):
        n = int(fam.n)
        u = math.sqrt(0.5 * ups * d / gk) * x
        norm = 1.0 / math.sqrt(2.0 ** n * math.factorial(n))
        return (norm * np.exp(0.25j * ups * x * x / gk) * hermite(n, u) * np.exp(-0.5 * u * u)
                * (ups * d / (2 * math.pi * gk)) ** 0.25 * np.exp(-0.5j * (n + 0.5) * d * L))
    xp, xm = _x_plus_minus(spec, kind, fam.x0, fam.p0, L, g)
    r = getattr(fam, "r", 0.0)
    theta = getattr(fam, "theta", 0.0)
    z = d * L - theta
    Q = gk / (ups * d) * (math.cosh(2 * r) + math.cos(z) * math.sinh(2 * r))
    RQ = ups / gk * ((math.cosh(2 * r) + (math.cos(z) - d * math.sin(z)) * math.sinh(2 * r))
                     / (math.cosh(2 * r) + math.cos(z) * math.sinh(2 * r)))
    xm_z = xm * math.cosh(2 * r) + _y_minus(spec, kind, fam.x0, fam.p0, theta, L, g) * math.sinh(2 * r)
    # (num / conj(num))^(1/4) on the branch continuous in t
    num_arg = -0.5 * d * L + np.angle(1.0 + np.exp(1j * z) * math.tanh(r))
    pref = (1.0 / (2 * math.pi * Q)) ** 0.25 * np.exp(0.5j * num_arg)
    return pref * np.exp(-0.25 * (x - xp) ** 2 / Q
                         + 1j * (0.25 * RQ * x * x + (x - 0.5 * xp) * xm_z / (2 * Q)))
