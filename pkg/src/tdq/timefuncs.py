"""Closed-form time functions for the TO, TM and TQ systems.

The TO rows are written in terms of ``tau`` and ``L = ln tau``.  The TM
rows are the same expressions with ``tau -> exp(chi)`` and ``L -> chi``
(composition with the time map); derivative fields of the TM bundle are
therefore derivatives with respect to ``t'`` carried over to ``t``.  The
TQ rows give ``Xi_P = xi_hat exp(-chi/2)``, ``Xi_X = xi_hat_dot exp(chi/2)``
and the coefficients ``C3_T, C3_D, C3_X2``.

Throughout, ``a = |upsilon|`` and ``d = Delta``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .errors import UnsupportedCase
from .model import Regime, Sign, SystemKind, check_time, chi_of, tau_of

OVER, CRIT, UNDER = Regime.OVER, Regime.CRITICAL, Regime.UNDER
POS, NEG = Sign.POS, Sign.NEG


# --- TO rows: functions of (tau, L, a, d) --------------------------------

def _to_over_pos(tau, L, a, d):
    rt = np.sqrt(tau)
    em, ep = np.exp(-0.5 * d * L), np.exp(0.5 * d * L)
    Em, Ep = em * em, ep * ep
    return dict(
        xi=np.sqrt(1 / (2 * a * d)) * rt * (em + 1j * ep),
        xi_dot=np.sqrt(a / (8 * d)) / rt * ((1 - d) * em + 1j * (1 + d) * ep),
        phi3=tau * (Em + Ep) / (a * d),
        phi3_dot=((1 - d) * Em + (1 + d) * Ep) / d,
        phi3_ddot=a / tau * (-(1 - d) * Em + (1 + d) * Ep),
        phi1=tau * (Em - Ep + 2j) / (2 * a * d),
        phi1_dot=((1 - d) * Em - (1 + d) * Ep + 2j) / (2 * d),
    )


def _to_over_neg(tau, L, a, d):
    rt = np.sqrt(tau)
    em, ep = np.exp(-0.5 * d * L), np.exp(0.5 * d * L)
    Em, Ep = em * em, ep * ep
    return dict(
        xi=np.sqrt(1 / (2 * a * d)) * rt * (em - 1j * ep),
        xi_dot=-np.sqrt(a / (8 * d)) / rt * ((1 - d) * em - 1j * (1 + d) * ep),
        phi3=tau * (Em + Ep) / (a * d),
        phi3_dot=-((1 - d) * Em + (1 + d) * Ep) / d,
        phi3_ddot=a / tau * (-(1 - d) * Em + (1 + d) * Ep),
        phi1=tau * (Em - Ep - 2j) / (2 * a * d),
        phi1_dot=-((1 - d) * Em - (1 + d) * Ep - 2j) / (2 * d),
    )


def _to_crit_pos(tau, L, a, d):
    rt = np.sqrt(tau)
    return dict(
        xi=np.sqrt(1 / (2 * a)) * rt * (1 + 1j * L),
        xi_dot=np.sqrt(a / 2) / rt * (0.5 + 1j * (1 + 0.5 * L)),
        phi3=tau * (1 + L * L) / a,
        phi3_dot=(1 + L) ** 2,
        phi3_ddot=2 * a * (1 + L) / tau,
        phi1=tau * (1 - L * L + 2j * L) / (2 * a),
        phi1_dot=0.5 * (1 - L * L - 2 * L + 2j * (1 + L)),
    )


def _to_crit_neg(tau, L, a, d):
    rt = np.sqrt(tau)
    return dict(
        xi=np.sqrt(1 / (2 * a)) * rt * (1 - 1j * L),
        xi_dot=-np.sqrt(a / 2) / rt * (0.5 - 1j * (1 + 0.5 * L)),
        phi3=tau * (1 + L * L) / a,
        phi3_dot=-(1 + L) ** 2,
        phi3_ddot=2 * a * (1 + L) / tau,
        phi1=tau * (1 - L * L - 2j * L) / (2 * a),
        phi1_dot=-0.5 * (1 - L * L - 2 * L - 2j * (1 + L)),
    )


def _to_under_pos(tau, L, a, d):
    rt = np.sqrt(tau)
    ph = np.exp(0.5j * d * L)
    return dict(
        xi=np.sqrt(1 / (a * d)) * rt * ph,
        xi_dot=np.sqrt(a / (4 * d)) * (1 + 1j * d) / rt * ph,
        phi3=2 * tau / (a * d) + 0 * L,
        phi3_dot=2 / d + 0 * L,
        phi3_ddot=0 * L,
        phi1=tau * ph * ph / (a * d),
        phi1_dot=(1 + 1j * d) / d * ph * ph,
    )


def _to_under_neg(tau, L, a, d):
    rt = np.sqrt(tau)
    ph = np.exp(-0.5j * d * L)
    return dict(
        xi=np.sqrt(1 / (a * d)) * rt * ph,
        xi_dot=-np.sqrt(a / (4 * d)) * (1 - 1j * d) / rt * ph,
        phi3=2 * tau / (a * d) + 0 * L,
        phi3_dot=-2 / d + 0 * L,
        phi3_ddot=0 * L,
        phi1=tau * ph * ph / (a * d),
        phi1_dot=-(1 - 1j * d) / d * ph * ph,
    )


TO_ROWS = {
    (OVER, POS): _to_over_pos, (OVER, NEG): _to_over_neg,
    (CRIT, POS): _to_crit_pos, (CRIT, NEG): _to_crit_neg,
    (UNDER, POS): _to_under_pos, (UNDER, NEG): _to_under_neg,
}


# --- TQ rows: functions of (chi, a, d) ------------------------------------

def _tq_over_pos(chi, a, d):
    em, ep = np.exp(-0.5 * d * chi), np.exp(0.5 * d * chi)
    Em, Ep = em * em, ep * ep
    return dict(
        Xi_P=np.sqrt(1 / (2 * a * d)) * (em + 1j * ep),
        Xi_X=np.sqrt(a / (8 * d)) * ((1 - d) * em + 1j * (1 + d) * ep),
        C3_T=(Em + Ep) / (a * d),
        C3_D=0.5 * (-Em + Ep),
        C3_X2=-a / 4 * (-(1 - d) * Em + (1 + d) * Ep),
    )


def _tq_over_neg(chi, a, d):
    em, ep = np.exp(-0.5 * d * chi), np.exp(0.5 * d * chi)
    Em, Ep = em * em, ep * ep
    return dict(
        Xi_P=np.sqrt(1 / (2 * a * d)) * (em - 1j * ep),
        Xi_X=-np.sqrt(a / (8 * d)) * ((1 - d) * em - 1j * (1 + d) * ep),
        C3_T=(Em + Ep) / (a * d),
        C3_D=0.5 * (Em - Ep),
        C3_X2=-a / 4 * (-(1 - d) * Em + (1 + d) * Ep),
    )


def _tq_crit_pos(chi, a, d):
    return dict(
        Xi_P=np.sqrt(1 / (2 * a)) * (1 + 1j * chi),
        Xi_X=np.sqrt(a / 2) * (0.5 + 1j * (1 + 0.5 * chi)),
        C3_T=(1 + chi * chi) / a,
        C3_D=chi,
        C3_X2=-a / 2 * (1 + chi),
    )


def _tq_crit_neg(chi, a, d):
    return dict(
        Xi_P=np.sqrt(1 / (2 * a)) * (1 - 1j * chi),
        Xi_X=-np.sqrt(a / 2) * (0.5 - 1j * (1 + 0.5 * chi)),
        C3_T=(1 + chi * chi) / a,
        C3_D=-chi,
        C3_X2=-a / 2 * (1 + chi),
    )


def _tq_under_pos(chi, a, d):
    ph = np.exp(0.5j * d * chi)
    z = 0 * chi
    return dict(
        Xi_P=np.sqrt(1 / (a * d)) * ph,
        Xi_X=np.sqrt(a / (4 * d)) * (1 + 1j * d) * ph,
        C3_T=2 / (a * d) + z, C3_D=z, C3_X2=z,
    )


def _tq_under_neg(chi, a, d):
    ph = np.exp(-0.5j * d * chi)
    z = 0 * chi
    return dict(
        Xi_P=np.sqrt(1 / (a * d)) * ph,
        Xi_X=-np.sqrt(a / (4 * d)) * (1 - 1j * d) * ph,
        C3_T=2 / (a * d) + z, C3_D=z, C3_X2=z,
    )


TQ_ROWS = {
    (OVER, POS): _tq_over_pos, (OVER, NEG): _tq_over_neg,
    (CRIT, POS): _tq_crit_pos, (CRIT, NEG): _tq_crit_neg,
    (UNDER, POS): _tq_under_pos, (UNDER, NEG): _tq_under_neg,
}


def xi_arg(spec, L):
    """Continuous phase of ``xi`` as a function of ``L`` (``ln tau`` or ``chi``).

    In the over- and critically damped rows ``Re xi > 0`` so the principal
    angle is continuous; the under-damped phase is ``+-(Delta/2) L``.
    """
    regime, sign = spec.case
    a, d = spec.abs_upsilon, spec.delta
    L = np.asarray(L, dtype=float)
    if regime is UNDER:
        out = (0.5 * d if sign is POS else -0.5 * d) * L
    elif regime is CRIT:
        out = np.arctan(L) if sign is POS else -np.arctan(L)
    else:
        out = np.arctan(np.exp(d * L))
        out = out if sign is POS else -out
    return out[()] if out.ndim == 0 else out


def to_row(spec, tau, L):
    return TO_ROWS[spec.case](tau, L, spec.abs_upsilon, spec.delta)


@dataclass(frozen=True)
class TimeFunctions:
    """Bundle of time functions at one time (or an array of times).

    Derivatives are with respect to ``t'`` (transported to ``t`` for TM).
    TQ-only fields are ``None`` for TO and TM.
    """

    kind: SystemKind
    t: object
    xi: complex
    xi_bar: complex
    xi_dot: complex
    xi_bar_dot: complex
    xi_arg: float
    phi1: complex
    phi1_dot: complex
    phi2: complex
    phi2_dot: complex
    phi3: float
    phi3_dot: float
    phi3_ddot: float
    Xi_P: Optional[complex] = None
    Xi_X: Optional[complex] = None
    Xi_P_bar: Optional[complex] = None
    Xi_X_bar: Optional[complex] = None
    C3_T: Optional[float] = None
    C3_D: Optional[float] = None
    C3_X2: Optional[float] = None

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _scalar(v):
    v = np.asarray(v)
    return v[()] if v.ndim == 0 else v


def eval_timefuncs(spec, kind, t):
    """Evaluate the time-function bundle of ``kind`` at elapsed time ``t``.

    ``t`` is ``t' - t0'`` for TO and ``t - t0`` for TM/TQ; arrays are
    accepted.  Initial values are simply the evaluation at ``t = 0``.
    """
    kind = SystemKind(kind)
    if spec.case not in TO_ROWS:
        raise UnsupportedCase(f"no table row for {spec.case}")
    t = check_time(spec, kind, t)
    if kind is SystemKind.TO:
        tau = tau_of(spec, t)
        L = np.log(tau)
    else:
        L = chi_of(spec, t)
        tau = np.exp(L)
    row = to_row(spec, tau, L)
    extra = {}
    if kind is SystemKind.TQ:
        q = TQ_ROWS[spec.case](L, spec.abs_upsilon, spec.delta)
        extra = dict(
            Xi_P=_scalar(q["Xi_P"]), Xi_X=_scalar(q["Xi_X"]),
            Xi_P_bar=_scalar(np.conj(q["Xi_P"])), Xi_X_bar=_scalar(np.conj(q["Xi_X"])),
            C3_T=_scalar(q["C3_T"]), C3_D=_scalar(q["C3_D"]), C3_X2=_scalar(q["C3_X2"]),
        )
    return TimeFunctions(
        kind=kind, t=t,
        xi=_scalar(row["xi"]), xi_bar=_scalar(np.conj(row["xi"])),
        xi_dot=_scalar(row["xi_dot"]), xi_bar_dot=_scalar(np.conj(row["xi_dot"])),
        xi_arg=xi_arg(spec, L),
        phi1=_scalar(row["phi1"]), phi1_dot=_scalar(row["phi1_dot"]),
        phi2=_scalar(np.conj(row["phi1"])), phi2_dot=_scalar(np.conj(row["phi1_dot"])),
        phi3=_scalar(row["phi3"]), phi3_dot=_scalar(row["phi3_dot"]),
        phi3_ddot=_scalar(row["phi3_ddot"]),
        **extra,
    )


@dataclass(frozen=True)
class Frame:
    """Complex width function pair used to build Gaussian states.

    ``width`` plays the role of ``xi`` (TO, TM) or ``Xi_P`` (TQ) and
    ``width_dot`` of ``xi_dot`` or ``Xi_X``; ``arg`` is the continuous
    phase of ``width``.
    """

    width: complex
    width_dot: complex
    arg: float


def frame(spec, kind, t):
    tf = eval_timefuncs(spec, kind, t)
    if tf.kind is SystemKind.TQ:
        return Frame(tf.Xi_P, tf.Xi_X, tf.xi_arg)
    return Frame(tf.xi, tf.xi_dot, tf.xi_arg)

