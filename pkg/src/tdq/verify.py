"""Numerical oracles for the closed forms.

Each check returns an :class:`OracleReport`.  Checks come in pairs: the
check itself and a negative control that perturbs one input and must
*fail* the same comparison, so that a vacuous oracle cannot pass.
For a negative control ``passed`` means the perturbed error exceeded
the tolerance.

Randomly drawn times are derived from ``(seed, case, check)`` only, so
filtering the case list never changes the numbers of the remaining
checks.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.integrate import simpson

from . import observables as obs
from .algebra import PRINTED_GENERATORS, apply_generator, generator, printed_generator
from .errors import ConventionError, TailError
from .model import Regime, Sign, SystemKind, SystemSpec, chi_of, tau_of, tm_to_to_time
from .regime_solutions import normalize_pair, xi_closed_form
from .states import (Coherent, Number, Squeezed, StateSpec, WavefunctionSample, oracle_grid,
                     sample, wavefunction)
from .stencils import d1, d2
from .timefuncs import eval_timefuncs

DEFAULT_SEED = 20240611

# representative parameters for each regime and sign
CASE_PARAMETERS = {
    (Regime.OVER, Sign.POS): (5.0, 2.0),
    (Regime.OVER, Sign.NEG): (-5.0, 2.0),
    (Regime.CRITICAL, Sign.POS): (4.0, 2.0),
    (Regime.CRITICAL, Sign.NEG): (-4.0, 2.0),
    (Regime.UNDER, Sign.POS): (3.0, 2.0),
    (Regime.UNDER, Sign.NEG): (-3.0, 2.0),
}

ALL_CASES = tuple((k, r, s) for k in SystemKind for (r, s) in CASE_PARAMETERS)


@dataclass(frozen=True)
class Tolerances:
    wronskian: float = 1e-10
    ode: float = 1e-8
    derivative: float = 1e-6
    norm: float = 1e-8
    residual: float = 1e-4
    ladder: float = 1e-5
    annihilation: float = 1e-6
    moments: float = 1e-7
    product: float = 1e-9
    eom: float = 1e-5
    heisenberg: float = 1e-12
    negative_threshold: float = 1e-1

    def scaled(self, factor):
        """Every tolerance multiplied by ``factor`` (the control threshold is kept)."""
        vals = {k: v * factor for k, v in asdict(self).items() if k != "negative_threshold"}
        return replace(self, **vals)


@dataclass(frozen=True)
class OracleReport:
    check: str
    case: str
    max_abs_error: float
    tolerance: float
    passed: bool
    metadata: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, allow_nan=True)


def _report(check, case, err, tol, **meta):
    err = float(err)
    return OracleReport(check, case, err, float(tol), bool(err <= tol), meta)


def _control(check, case, err, threshold, **meta):
    err = float(err)
    meta["negative_control"] = True
    return OracleReport(check + ":negative_control", case, err, float(threshold),
                        bool(err > threshold), meta)


def case_id(kind, regime, sign):
    return f"{SystemKind(kind).value},{Regime(regime).value},{Sign(sign).value}"


def parse_case(text):
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"case must look like 'tm,under,pos', got {text!r}")
    return SystemKind(parts[0]), Regime(parts[1]), Sign(parts[2])


def case_spec(regime, sign):
    ups, om = CASE_PARAMETERS[(Regime(regime), Sign(sign))]
    return SystemSpec.create(ups, om)


def _rng(seed, *key):
    return np.random.default_rng([int(seed)] + [int(k) for k in key])


def sample_times(spec, kind, rng, count):
    """Seeded in-domain elapsed times for system ``kind``."""
    if SystemKind(kind) is SystemKind.TO:
        top = 2.0 if spec.upsilon > 0 else 0.8 / spec.abs_upsilon
        return rng.uniform(0.0, top, count)
    return rng.uniform(-0.1, 0.3, count)


# --- quadrature ---------------------------------------------------------------

@dataclass(frozen=True)
class Moments:
    norm: float
    x_mean: float
    p_mean: float
    x_var: float
    p_var: float


def quadrature_moments(sample, tail_rtol=1e-10):
    """Simpson moments with ``P = -i d/dx`` from 5-point stencils."""
    x, psi = sample.x, sample.psi
    amp = np.abs(psi)
    if max(amp[0], amp[-1]) > tail_rtol * amp.max():
        raise TailError("wavefunction not decayed at the grid edge")
    dens = amp * amp
    dpsi = d1(psi, x[1] - x[0])
    norm = simpson(dens, x=x)
    xm = simpson(x * dens, x=x) / norm
    xv = simpson((x - xm) ** 2 * dens, x=x) / norm
    pm = simpson(np.real(-1j * np.conj(psi) * dpsi), x=x) / norm
    pv = simpson(np.abs(dpsi) ** 2, x=x) / norm - pm * pm
    return Moments(float(norm), float(xm), float(pm), float(xv), float(pv))


# --- Schrödinger residual -----------------------------------------------------------

def hamiltonian_action(spec, kind, t, x, psi, d_convention="symmetric"):
    """``H psi`` for the system's Hamiltonian at elapsed time ``t``."""
    kind = SystemKind(kind)
    h = x[1] - x[0]
    lap = d2(psi, h)
    w2 = spec.omega ** 2
    if kind is SystemKind.TO:
        tau = tau_of(spec, t)
        return -0.5 * lap + 0.5 * w2 * x * x * psi / (tau * tau)
    if kind is SystemKind.TM:
        e = math.exp(chi_of(spec, t))
        return -0.5 * e * lap + 0.5 * w2 * x * x * psi / e
    dpsi = d1(psi, h)
    dil = -1j * (x * dpsi + 0.5 * psi) if d_convention == "symmetric" else -1j * x * dpsi
    return -0.5 * lap - 0.5 * spec.upsilon * dil + 0.5 * w2 * x * x * psi


def time_derivative(fn, spec, kind, t, x):
    """Second-order difference in time; one-sided at the TO initial time."""
    h = 1e-6 * max(1.0, abs(t))
    if SystemKind(kind) is SystemKind.TO and t - h < 0.0:
        return (-3.0 * fn(t, x) + 4.0 * fn(t + h, x) - fn(t + 2 * h, x)) / (2.0 * h)
    return (fn(t + h, x) - fn(t - h, x)) / (2.0 * h)


def residual_error(spec, kind, fn, t, x, d_convention="symmetric"):
    psi = fn(t, x)
    hpsi = hamiltonian_action(spec, kind, t, x, psi, d_convention)
    res = 1j * time_derivative(fn, spec, kind, t, x) - hpsi
    return float(np.max(np.abs(res)) / np.max(np.abs(hpsi)))


def state_function(spec, state):
    return lambda t, x: wavefunction(spec, state, t, x)


def wrong_width_function(spec, state, factor=1.3):
    """A Gaussian whose width is off by ``factor``: not a solution."""
    def fn(t, x):
        center = np.mean(x)
        return wavefunction(spec, state, t, center + (x - center) / factor)
    return fn


def schrodinger_residual(spec, kind, state, t, grid=None, tol=1e-4, d_convention="symmetric"):
    grid = oracle_grid(spec, state, t) if grid is None else np.asarray(grid, dtype=float)
    err = residual_error(spec, kind, state_function(spec, state), t, grid, d_convention)
    return _report("schrodinger_residual", case_id(kind, spec.regime, spec.sign), err, tol,
                   family=_family_label(state.family), t=float(t), grid_points=int(grid.size))


def select_d_convention(spec, t=0.1, tol=1e-4):
    """Pick the dilation convention that makes a TQ ground state a solution."""
    state = StateSpec(SystemKind.TQ, Number(0))
    grid = oracle_grid(spec, state, t)
    fn = state_function(spec, state)
    errors = {}
    for conv in ("symmetric", "x_dx"):
        errors[conv] = residual_error(spec, SystemKind.TQ, fn, t, grid, conv)
        if errors[conv] <= tol:
            return conv, errors
    raise ConventionError(f"no dilation convention satisfies the TQ equation: {errors}")


def _family_label(fam):
    if isinstance(fam, Number):
        return f"number(n={fam.n})"
    if isinstance(fam, Squeezed):
        return f"squeezed(x0={fam.x0},p0={fam.p0},r={fam.r},theta={fam.theta})"
    return f"coherent(x0={fam.x0},p0={fam.p0})"


# --- Wronskians, ODE and derivative consistency -------------------------------------

def wronskian_errors(spec, kind, times):
    """``max |W(xi, conj xi) + i|`` from the bundle and ``max |W(g1, g2) - 1|``."""
    tf = eval_timefuncs(spec, kind, np.asarray(times))
    if SystemKind(kind) is SystemKind.TQ:
        w, wd = np.asarray(tf.Xi_P), np.asarray(tf.Xi_X)
    else:
        w, wd = np.asarray(tf.xi), np.asarray(tf.xi_dot)
    err_xi = np.max(np.abs(w * np.conj(wd) - wd * np.conj(w) + 1j))
    tp = times if SystemKind(kind) is SystemKind.TO else tm_to_to_time(spec, np.asarray(times))
    err_g = np.max(np.abs(normalize_pair(spec).wronskian(tp) - 1.0))
    return float(err_xi), float(err_g)


def rk4_xi(spec, lam_end, steps, omega=None):
    """Integrate the auxiliary oscillator in ``lambda = ln tau`` from ``tau = 1``.

    Returns ``(lambda, xi, xi_dot)`` arrays; the initial data are the
    closed-form values at ``tau = 1``.
    """
    ups = spec.upsilon
    w2 = (spec.omega if omega is None else omega) ** 2
    sol = xi_closed_form(spec)

    def rhs(lam, y):
        e = math.exp(lam)
        return np.array([y[1] * e / ups, -w2 * y[0] / (e * ups)])

    lam = np.linspace(0.0, lam_end, steps + 1)
    h = lam[1] - lam[0]
    y = np.array([sol.xi(0.0), sol.xi_dot(0.0)], dtype=complex)
    out = np.empty((steps + 1, 2), dtype=complex)
    out[0] = y
    for i in range(steps):
        l0 = lam[i]
        k1 = rhs(l0, y)
        k2 = rhs(l0 + h / 2, y + h / 2 * k1)
        k3 = rhs(l0 + h / 2, y + h / 2 * k2)
        k4 = rhs(l0 + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = y
    return lam, out[:, 0], out[:, 1]


def ode_window(spec):
    """End of the integration window in ``ln tau``."""
    if spec.upsilon > 0:
        return math.log1p(2.0 * spec.upsilon)
    return math.log(0.05)


def ode_error(spec, omega=None, dlam=0.002):
    lam_end = ode_window(spec)
    steps = max(10, int(math.ceil(abs(lam_end) / dlam)))
    lam, xi, _ = rk4_xi(spec, lam_end, steps, omega)
    tp = np.expm1(lam) / spec.upsilon
    exact = xi_closed_form(spec).xi(tp)
    return float(np.max(np.abs(xi - exact))), steps


def _fd5(f, t, h):
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h)


def derivative_errors(spec, kind, times):
    """Relative mismatch of tabulated derivatives against 5-point differences.

    TM derivatives are with respect to ``t'``, hence the ``exp(-chi)``
    chain factor.
    """
    kind = SystemKind(kind)
    worst = 0.0
    for t in times:
        h = 1e-3 * (1.0 / spec.abs_upsilon)
        if kind is SystemKind.TO:
            h = min(h, 0.25 * t) if t > 0 else h
            if t - 2 * h < 0:
                t = t + 2 * h
        tf = eval_timefuncs(spec, kind, t)
        chain = 1.0 if kind is SystemKind.TO else math.exp(-chi_of(spec, t))
        get = lambda name: (lambda s: getattr(eval_timefuncs(spec, kind, s), name))
        pairs = [("xi", tf.xi_dot), ("phi1", tf.phi1_dot), ("phi3", tf.phi3_dot),
                 ("phi3_dot", tf.phi3_ddot)]
        for name, tab in pairs:
            fd = chain * _fd5(get(name), t, h)
            worst = max(worst, abs(fd - tab) / max(abs(tab), abs(getattr(tf, name)), 1e-300))
    return worst


# --- moments, products, EOM -----------------------------------------------------------

def moment_error(spec, kind, family, t, x0_shift=0.0):
    state = StateSpec(SystemKind(kind), family)
    m = quadrature_moments(sample(spec, state, t, oracle_grid(spec, state, t)))
    r = getattr(family, "r", 0.0)
    th = getattr(family, "theta", 0.0)
    x0 = family.x0 + x0_shift
    cf = (obs.mean_x(spec, kind, x0, family.p0, t), obs.mean_p(spec, kind, x0, family.p0, t),
          obs.var_x(spec, kind, r, th, t), obs.var_p(spec, kind, r, th, t))
    err = max(abs(a - float(b)) for a, b in zip((m.x_mean, m.p_mean, m.x_var, m.p_var), cf))
    return err, abs(m.norm - 1.0)


def eom_error(spec, kind, x0, p0, t, omega=None):
    """Relative mismatch of ``d<x>/dt, d<p>/dt`` against Hamilton's equations."""
    kind = SystemKind(kind)
    h = 1e-5
    dx = (obs.mean_x(spec, kind, x0, p0, t + h) - obs.mean_x(spec, kind, x0, p0, t - h)) / (2 * h)
    dp = (obs.mean_p(spec, kind, x0, p0, t + h) - obs.mean_p(spec, kind, x0, p0, t - h)) / (2 * h)
    x, p = float(obs.mean_x(spec, kind, x0, p0, t)), float(obs.mean_p(spec, kind, x0, p0, t))
    rhs_spec = spec if omega is None else replace(spec, omega=omega)
    fx, fp = obs.classical_rhs(rhs_spec, kind, obs.ClassicalState(x, p, t))
    scale = max(abs(fx), abs(fp), abs(x), abs(p))
    return max(abs(dx - fx), abs(dp - fp)) / scale


# --- ladder action -----------------------------------------------------------------------

def _l2(values, x):
    return float(math.sqrt(simpson(np.abs(values) ** 2, x=x)))


def ladder_errors(spec, kind, t, nmax=3, source="generic", scale=1.0):
    """Worst lowering/raising error, annihilation error and ``M`` eigen error."""
    kind = SystemKind(kind)
    get = generator if source == "generic" else printed_generator
    jm = get(spec, kind, "Jminus", t)
    jp = get(spec, kind, "Jplus", t)
    mm = get(spec, kind, "M", t)
    if scale != 1.0:
        jm = replace(jm, coeff_P=jm.coeff_P * scale, coeff_X=jm.coeff_X * scale)
        jp = replace(jp, coeff_P=jp.coeff_P * scale, coeff_X=jp.coeff_X * scale)
    x = oracle_grid(spec, StateSpec(kind, Number(nmax + 1)), t)
    psis = [wavefunction(spec, StateSpec(kind, Number(n)), t, x) for n in range(nmax + 2)]
    ladder = annihil = eigen = 0.0
    for n in range(nmax + 1):
        st = StateSpec(kind, Number(n))
        smp = WavefunctionSample(x, psis[n], kind, t)
        dt = time_derivative(state_function(spec, st), spec, kind, t, x)
        low = apply_generator(jm, smp, dt).psi
        if n == 0:
            annihil = _l2(low, x)
        else:
            ladder = max(ladder, _l2(low - math.sqrt(n) * psis[n - 1], x))
        up = apply_generator(jp, smp, dt).psi
        ladder = max(ladder, _l2(up - math.sqrt(n + 1) * psis[n + 1], x))
        eigen = max(eigen, _l2(apply_generator(mm, smp, dt).psi - (n + 0.5) * psis[n], x))
    return ladder, annihil, eigen, int(x.size)


# --- suite -----------------------------------------------------------------------------

SQUEEZE = (0.5, 0.7)
X0, P0 = 1.0, 1.0
MOMENT_TIMES = 10
EOM_TIMES = 10
WRONSKIAN_TIMES = 100


def _safe_to_times(spec, kind, times, margin):
    if SystemKind(kind) is SystemKind.TO:
        return np.maximum(times, margin)
    return times


def case_reports(kind, regime, sign, seed, tol):
    """All checks for one ``(kind, regime, sign)`` cell."""
    kind, regime, sign = SystemKind(kind), Regime(regime), Sign(sign)
    spec = case_spec(regime, sign)
    cid = case_id(kind, regime, sign)
    idx = ALL_CASES.index((kind, regime, sign))
    out = []

    # Wronskians
    times = sample_times(spec, kind, _rng(seed, idx, 1), WRONSKIAN_TIMES)
    e_xi, e_g = wronskian_errors(spec, kind, times)
    out.append(_report("wronskian_xi", cid, e_xi, tol.wronskian, samples=WRONSKIAN_TIMES))
    out.append(_report("wronskian_gamma", cid, e_g, tol.wronskian, samples=WRONSKIAN_TIMES))
    tf = eval_timefuncs(spec, kind, times)
    w = np.asarray(tf.Xi_P if kind is SystemKind.TQ else tf.xi) * 1.001
    wd = np.asarray(tf.Xi_X if kind is SystemKind.TQ else tf.xi_dot)
    bad = float(np.max(np.abs(w * np.conj(wd) - wd * np.conj(w) + 1j)))
    out.append(_control("wronskian_xi", cid, bad, tol.wronskian, perturbation="xi*1.001"))

    # derivative consistency of the tabulated bundle
    times = sample_times(spec, kind, _rng(seed, idx, 2), 20)
    out.append(_report("derivative_consistency", cid, derivative_errors(spec, kind, times),
                       tol.derivative, samples=20))

    # auxiliary ODE (shared by all kinds; attached to TO)
    if kind is SystemKind.TO:
        err, steps = ode_error(spec)
        out.append(_report("ode_rk4", cid, err, tol.ode, steps=steps, window_ln_tau=ode_window(spec)))
        err, steps = ode_error(spec, omega=spec.omega * 1.001)
        out.append(_control("ode_rk4", cid, err, tol.ode, perturbation="omega*1.001"))

    # Schrödinger residuals
    t_res = float(sample_times(spec, kind, _rng(seed, idx, 3), 1)[0])
    t_res = max(t_res, 0.0)
    families = [Number(0), Number(1), Number(2), Coherent(X0, P0), Squeezed(X0, P0, *SQUEEZE)]
    for fam in families:
        out.append(schrodinger_residual(spec, kind, StateSpec(kind, fam), t_res, tol=tol.residual))
    st = StateSpec(kind, Coherent(X0, P0))
    grid = oracle_grid(spec, st, t_res)
    bad = residual_error(spec, kind, wrong_width_function(spec, st), t_res, grid)
    out.append(_control("schrodinger_residual", cid, bad, tol.negative_threshold,
                        perturbation="width*1.3", t=t_res))

    # ladder action
    key = (kind, regime, sign)
    source = "printed" if key in PRINTED_GENERATORS else "generic"
    lad, ann, eig, npts = ladder_errors(spec, kind, t_res, source=source)
    out.append(_report("ladder", cid, lad, tol.ladder, source=source, grid_points=npts, t=t_res))
    out.append(_report("annihilation", cid, ann, tol.annihilation, source=source, t=t_res))
    _, _, eig_g, _ = ladder_errors(spec, kind, t_res, nmax=2) if source == "printed" else (0, 0, eig, 0)
    out.append(_report("number_operator", cid, eig_g, tol.ladder, source="generic", t=t_res))
    lad_bad, _, _, _ = ladder_errors(spec, kind, t_res, nmax=1, scale=1.01)
    out.append(_control("ladder", cid, lad_bad, tol.ladder, perturbation="J*1.01"))

    # moments against the tables
    times = _safe_to_times(spec, kind, sample_times(spec, kind, _rng(seed, idx, 4), MOMENT_TIMES), 0.0)
    for fam in (Coherent(X0, P0), Squeezed(X0, P0, *SQUEEZE)):
        errs = [moment_error(spec, kind, fam, float(t)) for t in times]
        out.append(_report("moments", cid, max(e for e, _ in errs), tol.moments,
                           family=_family_label(fam), samples=MOMENT_TIMES))
        out.append(_report("norm", cid, max(n for _, n in errs), tol.norm, family=_family_label(fam)))
    bad = moment_error(spec, kind, Coherent(X0, P0), float(times[0]), x0_shift=1e-3)[0]
    out.append(_control("moments", cid, bad, tol.moments, perturbation="x0+1e-3"))

    prod = 0.0
    for t in times:
        for r, th in ((0.0, 0.0), SQUEEZE):
            prod = max(prod, abs(obs.product_table5(spec, kind, r, th, t)
                                 - obs.uncertainty_product(spec, kind, r, th, t)))
    out.append(_report("product_table", cid, prod, tol.product, samples=2 * MOMENT_TIMES))

    # Hamilton's equations
    times = _safe_to_times(spec, kind, sample_times(spec, kind, _rng(seed, idx, 5), EOM_TIMES), 1e-4)
    for x0, p0, label in ((X0, P0, "coherent"), (-0.7, 1.3, "squeezed")):
        err = max(eom_error(spec, kind, x0, p0, float(t)) for t in times)
        out.append(_report("eom", cid, err, tol.eom, family=label, samples=EOM_TIMES))
    bad = eom_error(spec, kind, X0, P0, float(times[0]), omega=spec.omega * 1.01)
    out.append(_control("eom", cid, bad, tol.eom, perturbation="omega*1.01"))

    # Heisenberg bound
    rng = _rng(seed, idx, 6)
    worst = math.inf
    for t in sample_times(spec, kind, rng, 50):
        r, th = rng.uniform(0.0, 2.0), rng.uniform(-math.pi, math.pi)
        worst = min(worst, float(obs.uncertainty_product(spec, kind, r, th, t)))
    out.append(_report("heisenberg", cid, max(0.0, 0.25 - worst), tol.heisenberg, min_product=worst))
    return out


def run_suite(seed=DEFAULT_SEED, cases=None, tolerance_scale=1.0, tolerances=None):
    """Run every check for the selected cases; reports sorted deterministically."""
    tol = (tolerances or Tolerances()).scaled(tolerance_scale)
    cases = ALL_CASES if cases is None else [tuple(c) for c in cases]
    reports = []
    for kind, regime, sign in cases:
        reports.extend(case_reports(kind, regime, sign, seed, tol))
    order = {c: i for i, c in enumerate(case_id(*c) for c in ALL_CASES)}
    reports.sort(key=lambda r: (order.get(r.case, len(order)), r.check,
                                json.dumps(r.metadata, sort_keys=True)))
    return reports


def reports_to_jsonl(reports):
    return "".join(r.to_json() + "\n" for r in reports)
