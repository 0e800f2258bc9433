import math

import numpy as np
import pytest
from scipy.integrate import simpson

from tdq.errors import DomainError, GridError, OverflowGuardError, UnsupportedCase
from tdq.model import SystemKind, SystemSpec
from tdq.states import (Coherent, Number, Squeezed, StateSpec, WavefunctionSample,
                        coherent_state, default_grid, hermite, hermite_functions, number_state,
                        oracle_grid, printed_wavefunction, sample, squeeze_geometry,
                        squeezed_state, state_center_width, wavefunction)
from tdq.verify import quadrature_moments, residual_error, state_function

from conftest import in_domain_times

UNDER = SystemSpec.create(3.0, 2.0)


def test_hermite_explicit():
    u = np.linspace(-2, 2, 9)
    explicit = [np.ones_like(u), 2 * u, 4 * u ** 2 - 2, 8 * u ** 3 - 12 * u,
                16 * u ** 4 - 48 * u ** 2 + 12]
    for n, h in enumerate(explicit):
        np.testing.assert_allclose(hermite(n, u), h, atol=1e-12)


def test_hermite_functions_normalized():
    u = np.linspace(-15, 15, 6001)
    hf = hermite_functions(40, u)
    gram = simpson(hf[:, None, :] * hf[None, :, :], x=u) / math.sqrt(math.pi)
    np.testing.assert_allclose(gram, np.eye(41), atol=1e-10)


def test_hermite_overflow_guard():
    with pytest.raises(OverflowGuardError):
        hermite_functions(61, np.zeros(3))
    assert np.all(np.isfinite(hermite_functions(60, np.linspace(-12, 12, 101))))


def test_family_validation():
    with pytest.raises(DomainError):
        Number(-1)
    with pytest.raises(DomainError):
        Squeezed(0, 0, -0.1, 0)
    with pytest.raises(DomainError):
        Squeezed(0, 0, 0.1, -math.pi)


def test_sample_grid_validation():
    with pytest.raises(GridError):
        WavefunctionSample(np.array([0.0, 1.0, 2.0, 3.0]), np.zeros(4), SystemKind.TO, 0.0)
    with pytest.raises(GridError):
        WavefunctionSample(np.array([0.0, 1.0, 2.5, 3.0, 4.0]), np.zeros(5), SystemKind.TO, 0.0)


def test_tq_ground_state_example():
    x = np.linspace(-3, 3, 61)
    psi = number_state(UNDER, "tq", 0, 0.0, x).psi
    ud = UNDER.upsilon * UNDER.delta
    expect = (ud / (2 * math.pi)) ** 0.25 * np.exp(0.75j * x * x) * np.exp(-ud * x * x / 4)
    np.testing.assert_allclose(psi, expect, atol=1e-15)


@pytest.mark.parametrize("family", [Number(0), Number(1), Number(5), Coherent(1.0, 1.0),
                                    Squeezed(1.0, 1.0, 0.5, 0.7), Squeezed(-0.5, 2.0, 1.5, 3.0)])
def test_normalization(spec, kind, family):
    for t in in_domain_times(spec, kind, 3):
        m = quadrature_moments(sample(spec, StateSpec(kind, family), t))
        assert abs(m.norm - 1.0) <= 1e-8


def test_orthogonality(spec, kind):
    x = oracle_grid(spec, StateSpec(kind, Number(3)), 0.1)
    psis = [wavefunction(spec, StateSpec(kind, Number(n)), 0.1, x) for n in range(4)]
    for i in range(4):
        for j in range(i):
            assert abs(simpson(np.conj(psis[i]) * psis[j], x=x)) <= 1e-8


@pytest.mark.parametrize("family", [Number(0), Coherent(1.0, 1.0), Squeezed(1.0, 1.0, 0.5, 0.7),
                                    Squeezed(-1.0, 2.0, 1.2, -2.5)])
@pytest.mark.parametrize("t", [0.0, 0.2, 0.9])
def test_matches_printed_under_pos(kind, family, t):
    st = StateSpec(kind, family)
    x = default_grid(*state_center_width(UNDER, st, t))
    np.testing.assert_allclose(wavefunction(UNDER, st, t, x), printed_wavefunction(UNDER, st, t, x),
                               atol=1e-13)


def test_printed_forms_only_for_under_pos():
    with pytest.raises(UnsupportedCase):
        printed_wavefunction(SystemSpec.create(5.0, 2.0), StateSpec("to", Number(0)), 0.0,
                             np.linspace(-1, 1, 5))


def test_printed_number_needs_envelope():
    # without the Gaussian the tabulated TO number state is not normalizable
    x = np.linspace(-30, 30, 4001)
    psi = printed_wavefunction(UNDER, StateSpec("to", Number(0)), 0.5, x)
    ud = UNDER.upsilon * UNDER.delta
    bare = psi / np.exp(-ud * x * x / (4 * 2.5))
    assert abs(simpson(np.abs(psi) ** 2, x=x) - 1) < 1e-10
    assert simpson(np.abs(bare) ** 2, x=x) > 10


def test_tq_coherent_phase_without_exp_chi():
    # keeping exp(chi) in the TQ coherent phase breaks the equation of motion
    t = 0.3
    st = StateSpec("tq", Coherent(1.0, 1.0))
    x = oracle_grid(UNDER, st, t)
    chi = UNDER.upsilon * t
    good = residual_error(UNDER, "tq", state_function(UNDER, st), t, x)

    def misprinted(tt, xx):
        from tdq.states import _under_pos_log_time, _x_plus_minus
        L, _ = _under_pos_log_time(UNDER, "tq", tt)
        xp, xm = _x_plus_minus(UNDER, "tq", 1.0, 1.0, L, 1.0)
        ud = UNDER.upsilon * UNDER.delta
        base = printed_wavefunction(UNDER, StateSpec("tq", Coherent(1.0, 1.0)), tt, xx)
        return base * np.exp(1j * ud / 2 * (math.exp(-L) - 1) * (xx - xp / 2) * xm)

    bad = residual_error(UNDER, "tq", misprinted, t, x)
    assert good <= 1e-8 and bad > 1e-2 and chi != 0


def test_squeezed_r0_is_coherent(spec, kind):
    for t in in_domain_times(spec, kind, 4):
        c = coherent_state(spec, kind, 0.3, -1.0, t)
        s = squeezed_state(spec, kind, 0.3, -1.0, 0.0, 1.1, t, c.x)
        np.testing.assert_allclose(s.psi, c.psi, atol=1e-14)


def test_squeezed_phase_continuous():
    t = np.linspace(0.0, 3.0, 3001)
    x = np.array([0.0])
    vals = np.array([wavefunction(UNDER, StateSpec("tm", Squeezed(0, 0, 1.5, 2.0)), tt, x)[0] for tt in t])
    assert np.max(np.abs(np.diff(np.unwrap(np.angle(vals))))) < 0.05
    assert np.max(np.abs(np.diff(np.angle(vals)) % (2 * np.pi) - np.pi)) > 3.0


def test_center_example():
    g = squeeze_geometry(UNDER, "tm", Coherent(1.0, 1.0), 0.0)
    assert g.Xplus == pytest.approx(1.0, abs=1e-15)
    g = squeeze_geometry(UNDER, "to", Coherent(1.0, 1.0), 0.0)
    assert g.Xminus == pytest.approx(2 / math.sqrt(7) - 1 / UNDER.delta, abs=1e-15)


def test_geometry_examples():
    ud = UNDER.upsilon * UNDER.delta
    g = squeeze_geometry(UNDER, "tq", Squeezed(1, 1, 0.5, 0.0), 0.0)
    assert g.Q == pytest.approx(math.e / math.sqrt(7), rel=1e-14)
    g = squeeze_geometry(UNDER, "to", Squeezed(1, 1, 0.3, 0.0), 0.0)
    assert g.Q == pytest.approx(math.exp(0.6) / ud, rel=1e-14)
    g = squeeze_geometry(UNDER, "to", Coherent(1, 1), 0.4)
    tau = 1 + 3 * 0.4
    assert g.Q == pytest.approx(tau / ud, rel=1e-14)
    assert g.R_over_Q == pytest.approx(3 / tau, rel=1e-14)


@pytest.mark.parametrize("kind_name", ["to", "tm", "tq"])
@pytest.mark.parametrize("r, theta", [(0.0, 0.0), (0.4, 1.0), (1.1, -2.2)])
def test_geometry_matches_printed(kind_name, r, theta):
    d, ups = UNDER.delta, UNDER.upsilon
    x0, p0 = 0.7, -1.3
    for t in (0.0, 0.25, 0.8):
        g = squeeze_geometry(UNDER, kind_name, Squeezed(x0, p0, r, theta) if r else Coherent(x0, p0), t)
        L = math.log(1 + ups * t) if kind_name == "to" else ups * t
        scale = 1.0 if kind_name == "tq" else math.exp(L)
        a = math.sqrt(scale)
        z = d * L - theta
        Q = scale / (ups * d) * (math.cosh(2 * r) + math.cos(z) * math.sinh(2 * r))
        RQ = ups / scale * ((math.cosh(2 * r) + (math.cos(z) - d * math.sin(z)) * math.sinh(2 * r))
                            / (math.cosh(2 * r) + math.cos(z) * math.sinh(2 * r)))
        c, s = math.cos(d * L / 2), math.sin(d * L / 2)
        xplus = p0 * 2 * a / (ups * d) * s + x0 * a / d * (d * c - s)
        xminus = p0 * 2 * a / (ups * d) * c - x0 * a / d * (c + d * s)
        w = d * L / 2 - theta
        ym = p0 * 2 * a / (ups * d) * math.cos(w) - x0 * a / d * (math.cos(w) - d * math.sin(w))
        assert g.Q == pytest.approx(Q, rel=1e-13)
        assert g.R_over_Q == pytest.approx(RQ, rel=1e-13)
        assert g.Xplus == pytest.approx(xplus, abs=1e-13)
        assert g.Yminus == pytest.approx(ym, abs=1e-13)
        assert g.Xminus == pytest.approx(xminus * math.cosh(2 * r) + ym * math.sinh(2 * r), abs=1e-12)


def test_geometry_q_positive(spec, kind):
    rng = np.random.default_rng(3)
    for t in in_domain_times(spec, kind, 10):
        g = squeeze_geometry(spec, kind, Squeezed(1, 1, rng.uniform(0, 3), rng.uniform(-3, 3)), t)
        assert g.Q > 0


@pytest.mark.parametrize("family", [Number(0), Number(1), Number(2), Coherent(1.0, 1.0),
                                    Squeezed(1.0, 1.0, 0.5, 0.7)])
def test_schrodinger_residual(spec, kind, family):
    st = StateSpec(kind, family)
    for t in in_domain_times(spec, kind, 3):
        assert residual_error(spec, kind, state_function(spec, st), t, oracle_grid(spec, st, t)) <= 1e-4


def test_derived_case_flag():
    assert number_state(UNDER, "to", 0, 0.0).meta["derived_case"] is False
    assert number_state(SystemSpec.create(-3.0, 2.0), "to", 0, 0.0).meta["derived_case"] is True


def test_domain_errors():
    s = SystemSpec.create(-3.0, 2.0)
    with pytest.raises(DomainError):
        number_state(s, "to", 0, 0.5)
    with pytest.raises(DomainError):
        coherent_state(s, "to", 0, 0, -0.1)
