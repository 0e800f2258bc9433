"""Oscillator-algebra generators as coefficient vectors.

A generator is stored as coefficients over the operator basis
``{P, X, T, D, X^2, I}`` with

    P = -i d/dx,  X = x,  T = i d/dt,  D = (XP + PX)/2 = -i (x d/dx + 1/2),

where ``t`` is the system's own time (``t'`` for TO).  For width pair
``(w, w_dot)`` the ladder operators are

    J- = i (w P - w_dot X),   J+ = -i (conj(w) P - conj(w_dot) X),

with ``[J-, J+] = 1``, and ``M`` is built from ``phi3 = 2|w|^2`` so that
``M psi_n = (n + 1/2) psi_n``.

``PRINTED_GENERATORS`` holds the explicitly tabulated example algebras
for cross-checking.  Their ladder operators coincide with the generic
ones (after restoring the ``X`` that is missing from the critical TM
bracket).  The printed overdamped and critical TM ``M`` do not satisfy
the eigenvalue relation and are kept for reference only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError, UnsupportedCase
from .model import Regime, Sign, SystemKind, check_time, chi_of, tau_of
from .stencils import d1
from .timefuncs import eval_timefuncs


class GeneratorName(str, enum.Enum):
    JMINUS = "Jminus"
    JPLUS = "Jplus"
    M = "M"


@dataclass(frozen=True)
class GeneratorCoeffs:
    name: GeneratorName
    coeff_P: complex = 0.0
    coeff_X: complex = 0.0
    coeff_T: complex = 0.0
    coeff_D: complex = 0.0
    coeff_X2: complex = 0.0
    coeff_I: complex = 0.0

    def vector(self):
        return np.array([self.coeff_P, self.coeff_X, self.coeff_T,
                         self.coeff_D, self.coeff_X2, self.coeff_I], dtype=complex)


def generator(spec, kind, name, t):
    """Generic generator ``name`` of system ``kind`` at elapsed time ``t``."""
    kind = SystemKind(kind)
    name = GeneratorName(name)
    tf = eval_timefuncs(spec, kind, t)
    if kind is SystemKind.TQ:
        w, wd = tf.Xi_P, tf.Xi_X
    else:
        w, wd = tf.xi, tf.xi_dot
    if name is GeneratorName.JMINUS:
        return GeneratorCoeffs(name, coeff_P=1j * w, coeff_X=-1j * wd)
    if name is GeneratorName.JPLUS:
        return GeneratorCoeffs(name, coeff_P=-1j * np.conj(w), coeff_X=1j * np.conj(wd))
    if kind is SystemKind.TQ:
        return GeneratorCoeffs(name, coeff_T=tf.C3_T, coeff_D=-tf.C3_D, coeff_X2=-tf.C3_X2)
    # table derivatives are with respect to t'; T' = exp(-chi) T for TM
    tscale = 1.0 if kind is SystemKind.TO else math.exp(-chi_of(spec, t))
    return GeneratorCoeffs(name, coeff_T=tf.phi3 * tscale, coeff_D=-0.5 * tf.phi3_dot,
                           coeff_X2=0.25 * tf.phi3_ddot)


# --- printed example algebras ---------------------------------------------------

def _to_under_pos(spec, t):
    ups, d = spec.upsilon, spec.delta
    tau = tau_of(spec, check_time(spec, SystemKind.TO, t))
    L = math.log(tau)
    c = 1j * math.sqrt(1.0 / (ups * d))
    rt = math.sqrt(tau)
    e = np.exp(0.5j * d * L)
    return {
        GeneratorName.JMINUS: GeneratorCoeffs(
            GeneratorName.JMINUS, coeff_P=c * e * rt, coeff_X=-c * e * 0.5 * ups * (1 + 1j * d) / rt),
        GeneratorName.JPLUS: GeneratorCoeffs(
            GeneratorName.JPLUS, coeff_P=-c / e * rt, coeff_X=c / e * 0.5 * ups * (1 - 1j * d) / rt),
        GeneratorName.M: GeneratorCoeffs(GeneratorName.M, coeff_T=2.0 * tau / (ups * d), coeff_D=-1.0 / d),
    }


def _tm_under(spec, t):
    a, d, sg = spec.abs_upsilon, spec.delta, math.copysign(1.0, spec.upsilon)
    chi = chi_of(spec, check_time(spec, SystemKind.TM, t))
    c = 1j * math.sqrt(1.0 / (a * d)) * math.exp(0.5 * chi)
    e = np.exp(0.5j * sg * d * chi)
    em = math.exp(-chi)
    return {
        GeneratorName.JMINUS: GeneratorCoeffs(
            GeneratorName.JMINUS, coeff_P=c * e, coeff_X=-sg * c * e * 0.5 * a * (1 + 1j * sg * d) * em),
        GeneratorName.JPLUS: GeneratorCoeffs(
            GeneratorName.JPLUS, coeff_P=-c / e, coeff_X=sg * c / e * 0.5 * a * (1 - 1j * sg * d) * em),
        GeneratorName.M: GeneratorCoeffs(GeneratorName.M, coeff_T=2.0 / (a * d), coeff_D=-sg / d),
    }


def _tm_critical_pos(spec, t):
    ups = spec.upsilon
    chi = chi_of(spec, check_time(spec, SystemKind.TM, t))
    c = 1j * math.sqrt(1.0 / (2.0 * ups)) * math.exp(0.5 * chi)
    em = math.exp(-chi)
    h = 1.0 + 0.5 * chi
    return {
        # the bracketed term multiplies X
        GeneratorName.JMINUS: GeneratorCoeffs(
            GeneratorName.JMINUS, coeff_P=c * (1 + 1j * chi), coeff_X=-c * ups * em * (0.5 + 1j * h)),
        GeneratorName.JPLUS: GeneratorCoeffs(
            GeneratorName.JPLUS, coeff_P=-c * (1 - 1j * chi), coeff_X=c * ups * em * (0.5 - 1j * h)),
        GeneratorName.M: GeneratorCoeffs(
            GeneratorName.M, coeff_T=(1 + chi * chi) / ups, coeff_D=-0.5 * (1 + chi) ** 2,
            coeff_X2=0.5 * em * (1 + chi)),
    }


def _tm_over_pos(spec, t):
    ups, d = spec.upsilon, spec.delta
    chi = chi_of(spec, check_time(spec, SystemKind.TM, t))
    c = 1j * math.sqrt(1.0 / (2.0 * ups * d)) * math.exp(0.5 * chi)
    em = math.exp(-chi)
    lo, hi = math.exp(-0.5 * d * chi), math.exp(0.5 * d * chi)
    return {
        GeneratorName.JMINUS: GeneratorCoeffs(
            GeneratorName.JMINUS, coeff_P=c * (lo + 1j * hi),
            coeff_X=-c * 0.5 * ups * em * ((1 - d) * lo + 1j * (1 + d) * hi)),
        GeneratorName.JPLUS: GeneratorCoeffs(
            GeneratorName.JPLUS, coeff_P=-c * (lo - 1j * hi),
            coeff_X=c * 0.5 * ups * em * ((1 - d) * lo - 1j * (1 + d) * hi)),
        GeneratorName.M: GeneratorCoeffs(
            GeneratorName.M, coeff_T=(lo * lo + hi * hi) / (2.0 * ups * d),
            coeff_D=-((1 - d) * lo * lo + (1 + d) * hi * hi) / (2.0 * d),
            coeff_X2=-0.25 * ups * em * (-(1 - d) * lo * lo + (1 + d) * hi * hi)),
    }


def _tq_under_pos(spec, t):
    ups, d = spec.upsilon, spec.delta
    chi = chi_of(spec, check_time(spec, SystemKind.TQ, t))
    c = 1j * math.sqrt(1.0 / (ups * d))
    e = np.exp(0.5j * d * chi)
    return {
        GeneratorName.JMINUS: GeneratorCoeffs(
            GeneratorName.JMINUS, coeff_P=c * e, coeff_X=-c * e * 0.5 * ups * (1 + 1j * d)),
        GeneratorName.JPLUS: GeneratorCoeffs(
            GeneratorName.JPLUS, coeff_P=-c / e, coeff_X=c / e * 0.5 * ups * (1 - 1j * d)),
        GeneratorName.M: GeneratorCoeffs(GeneratorName.M, coeff_T=2.0 / (ups * d)),
    }


PRINTED_GENERATORS = {
    (SystemKind.TO, Regime.UNDER, Sign.POS): _to_under_pos,
    (SystemKind.TM, Regime.UNDER, Sign.POS): _tm_under,
    (SystemKind.TM, Regime.UNDER, Sign.NEG): _tm_under,
    (SystemKind.TM, Regime.CRITICAL, Sign.POS): _tm_critical_pos,
    (SystemKind.TM, Regime.OVER, Sign.POS): _tm_over_pos,
    (SystemKind.TQ, Regime.UNDER, Sign.POS): _tq_under_pos,
}

# printed M operators that fail M psi_n = (n + 1/2) psi_n
PRINTED_M_INCONSISTENT = frozenset({
    (SystemKind.TM, Regime.CRITICAL, Sign.POS),
    (SystemKind.TM, Regime.OVER, Sign.POS),
})


def printed_generator(spec, kind, name, t):
    """Generator as tabulated for one of the printed example cases."""
    key = (SystemKind(kind), spec.regime, spec.sign)
    if key not in PRINTED_GENERATORS:
        raise UnsupportedCase(f"no printed generators for {key}")
    return PRINTED_GENERATORS[key](spec, t)[GeneratorName(name)]


# --- action on samples -----------------------------------------------------------

def apply_generator(coeffs, sample, dpsi_dt):
    """Apply ``coeffs`` to a sampled wavefunction.

    ``dpsi_dt`` holds the time derivative of the same state on the same
    grid; it is only read when ``coeff_T`` is nonzero.
    """
    x = np.asarray(sample.x, dtype=float)
    psi = np.asarray(sample.psi, dtype=complex)
    if x.size < 5:
        raise GridError(f"need at least 5 grid points, got {x.size}")
    dpsi = d1(psi, x[1] - x[0])
    out = coeffs.coeff_I * psi
    out = out + coeffs.coeff_P * (-1j * dpsi)
    out = out + coeffs.coeff_X * x * psi
    out = out + coeffs.coeff_D * (-1j) * (x * dpsi + 0.5 * psi)
    out = out + coeffs.coeff_X2 * x * x * psi
    if coeffs.coeff_T != 0:
        dt = np.asarray(getattr(dpsi_dt, "psi", dpsi_dt), dtype=complex)
        out = out + coeffs.coeff_T * 1j * dt
    return type(sample)(x, out, sample.kind, sample.t, dict(sample.meta))
