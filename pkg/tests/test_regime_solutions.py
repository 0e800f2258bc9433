import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from tdq.errors import DegenerateError, DomainError
from tdq.model import Regime, SystemSpec
from tdq.regime_solutions import (RealBasis, euler_basis, normalize_pair, xi_closed_form,
                                  xi_from_pair)


def test_basis_at_unit_argument():
    assert euler_basis(0.25).w1(1.0) == 1.0 and euler_basis(0.25).w2(1.0) == 0.0
    b = euler_basis(4 / 9)
    assert (b.w1(1.0), b.w2(1.0)) == (1.0, 0.0)
    assert b.wronskian_const == pytest.approx(math.sqrt(7) / 6, rel=1e-15)


def test_over_basis_at_e():
    # frozen from the roots (1 -+ 0.6)/2 and cross-checked by integration below
    b = euler_basis(4 / 25)
    assert b.w1(math.e) == pytest.approx(1.2214027581601699, rel=1e-14)
    assert b.w2(math.e) == pytest.approx(2.225540928492468, rel=1e-14)


@pytest.mark.parametrize("A", [4 / 25, 0.25, 4 / 9, 2.0])
def test_basis_solves_euler_equation(A):
    b = euler_basis(A)
    for w, dw in ((b.w1, b.dw1), (b.w2, b.dw2)):
        sol = solve_ivp(lambda s, y: [y[1], -A * y[0] / (s * s)], (1.0, math.e),
                        [w(1.0), dw(1.0)], rtol=1e-12, atol=1e-14)
        assert sol.y[0, -1] == pytest.approx(w(math.e), rel=1e-9)


@pytest.mark.parametrize("A, wc", [(4 / 25, 0.6), (0.25, 1.0), (4 / 9, math.sqrt(7) / 6)])
def test_basis_wronskian_constant(A, wc):
    b = euler_basis(A)
    s = np.geomspace(0.01, 100.0, 50)
    np.testing.assert_allclose(b.wronskian(s), wc, rtol=1e-12)


def test_basis_rejects_nonpositive_argument():
    with pytest.raises(DomainError):
        euler_basis(0.1).w1(0.0)
    with pytest.raises(DomainError):
        euler_basis(1.0).w2(-1.0)


def test_over_pos_constants():
    pair = normalize_pair(SystemSpec.create(5.0, 2.0))
    assert pair.c1 == pytest.approx(math.sqrt(1 / 3)) and pair.c2 == pytest.approx(math.sqrt(1 / 3))


def test_over_neg_constants():
    pair = normalize_pair(SystemSpec.create(-5.0, 2.0))
    assert pair.c1 == pytest.approx(math.sqrt(1 / 3)) and pair.c2 == pytest.approx(-math.sqrt(1 / 3))


def test_degenerate_basis():
    bad = RealBasis(Regime.UNDER, 1.0, None, None, None, None, 0.0)
    with pytest.raises(DegenerateError):
        normalize_pair(SystemSpec.create(3.0, 2.0), bad)


def test_pair_wronskian_unity(spec):
    pair = normalize_pair(spec)
    for tp in (0.0, 0.1, 1.0):
        if 1 + spec.upsilon * tp <= 0:
            tp = 0.9 / spec.abs_upsilon
        assert abs(pair.wronskian(tp) - 1.0) <= 1e-10


def test_closed_form_matches_pair(spec):
    tp = np.linspace(0.0, 0.9 / spec.abs_upsilon, 40)
    a, b = xi_closed_form(spec), xi_from_pair(normalize_pair(spec))
    np.testing.assert_allclose(a.xi(tp), b.xi(tp), atol=1e-12, rtol=0)
    np.testing.assert_allclose(a.xi_dot(tp), b.xi_dot(tp), atol=1e-12, rtol=0)


def test_closed_form_examples():
    xi = xi_closed_form(SystemSpec.create(5.0, 2.0)).xi(0.0)
    assert xi == pytest.approx(math.sqrt(1 / 6) * (1 + 1j), abs=1e-15)
    xi = xi_closed_form(SystemSpec.create(-2.0, 2.0)).xi(0.0)
    assert xi == pytest.approx(math.sqrt(1 / (2 * math.sqrt(3))), abs=1e-15)


def test_xi_wronskian(spec):
    tp = np.linspace(0.0, 0.95 / spec.abs_upsilon, 100)
    assert np.max(np.abs(xi_closed_form(spec).wronskian(tp) + 1j)) <= 1e-10


def test_xi_solves_auxiliary_ode(spec):
    sol = xi_closed_form(spec)
    tp = np.linspace(0.05, 0.8, 50) / spec.abs_upsilon
    h = 1e-3 / spec.abs_upsilon
    f = sol.xi
    second = (-f(tp - 2 * h) + 16 * f(tp - h) - 30 * f(tp) + 16 * f(tp + h) - f(tp + 2 * h)) / (12 * h * h)
    tau = 1 + spec.upsilon * tp
    res = second + spec.omega ** 2 / tau ** 2 * f(tp)
    assert np.max(np.abs(res)) <= 1e-6 * np.max(np.abs(second))
