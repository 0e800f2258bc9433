import math

import numpy as np
import pytest

from tdq.model import SystemKind, SystemSpec, chi_of, tm_to_to_time
from tdq.timefuncs import eval_timefuncs, frame

from conftest import in_domain_times


def test_under_pos_to_initial_values():
    tf = eval_timefuncs(SystemSpec.create(3.0, 2.0), "to", 0.0)
    assert tf.phi3 == pytest.approx(2 / math.sqrt(7), rel=1e-15)
    assert tf.phi3_dot == pytest.approx(2 / (math.sqrt(7) / 3), rel=1e-15)
    assert tf.phi3_ddot == 0.0


def test_critical_tm_initial_values():
    tf = eval_timefuncs(SystemSpec.create(4.0, 2.0), "tm", 0.0)
    assert tf.xi == pytest.approx(math.sqrt(1 / 8), abs=1e-16)
    assert tf.xi_dot == pytest.approx(math.sqrt(2) * (0.5 + 1j), abs=1e-15)


def test_over_tq_c3t():
    # 2 cosh(0.6) / 3, cross-checked against 2 |Xi_P|^2
    tf = eval_timefuncs(SystemSpec.create(5.0, 2.0), "tq", 0.2)
    assert tf.C3_T == pytest.approx(0.7903101454948452, rel=1e-14)
    assert tf.C3_T == pytest.approx(2 * abs(tf.Xi_P) ** 2, rel=1e-14)


def test_bundle_identities(spec, kind):
    t = in_domain_times(spec, kind, 25)
    tf = eval_timefuncs(spec, kind, t)
    np.testing.assert_array_equal(tf.phi2, np.conj(tf.phi1))
    np.testing.assert_array_equal(tf.xi_bar, np.conj(tf.xi))
    np.testing.assert_allclose(tf.phi1, tf.xi ** 2, rtol=1e-13)
    np.testing.assert_allclose(tf.phi3, 2 * np.abs(tf.xi) ** 2, rtol=1e-13)
    np.testing.assert_allclose(tf.phi1_dot, 2 * tf.xi * tf.xi_dot, rtol=1e-12, atol=1e-14)
    assert np.all(tf.phi3 > 0)
    np.testing.assert_allclose(np.exp(1j * tf.xi_arg), tf.xi / np.abs(tf.xi), atol=1e-14)


def test_tm_is_to_composed_with_time_map(spec):
    # the TO clock only runs forward from t0'
    t = np.linspace(0.0, 0.3, 30)
    tm = eval_timefuncs(spec, "tm", t)
    to = eval_timefuncs(spec, "to", tm_to_to_time(spec, t))
    for name in ("xi", "xi_dot", "phi1", "phi1_dot", "phi3", "phi3_dot", "phi3_ddot"):
        np.testing.assert_allclose(getattr(tm, name), getattr(to, name), atol=1e-12, rtol=1e-12)


def test_tq_from_tm(spec):
    t = np.linspace(-0.1, 0.3, 30)
    tq, tm = eval_timefuncs(spec, "tq", t), eval_timefuncs(spec, "tm", t)
    e = np.exp(0.5 * chi_of(spec, t))
    np.testing.assert_allclose(tq.Xi_P, tm.xi / e, rtol=1e-13)
    np.testing.assert_allclose(tq.Xi_X, tm.xi_dot * e, rtol=1e-13)
    np.testing.assert_allclose(tq.C3_T, 2 * np.abs(tq.Xi_P) ** 2, rtol=1e-13)


def test_tm_wronskian_with_tabulated_derivative(spec):
    # tabulated TM derivatives are d/dt', so W stays -i on the TM clock
    t = np.linspace(-0.5, 0.5, 100)
    tf = eval_timefuncs(spec, "tm", t)
    w = tf.xi * np.conj(tf.xi_dot) - tf.xi_dot * np.conj(tf.xi)
    assert np.max(np.abs(w + 1j)) <= 1e-10


def test_derivative_consistency(spec, kind):
    rng = np.random.default_rng(7)
    for t in in_domain_times(spec, kind, 20)[1:-1] + rng.uniform(0, 1e-3, 18):
        h = 1e-3 / spec.abs_upsilon
        chain = 1.0 if kind is SystemKind.TO else math.exp(-chi_of(spec, t))
        f = lambda name, s: getattr(eval_timefuncs(spec, kind, s), name)
        tf = eval_timefuncs(spec, kind, t)
        for name, tab in (("phi1", tf.phi1_dot), ("phi3", tf.phi3_dot), ("phi3_dot", tf.phi3_ddot),
                          ("xi", tf.xi_dot)):
            fd = chain * (f(name, t - 2 * h) - 8 * f(name, t - h) + 8 * f(name, t + h)
                          - f(name, t + 2 * h)) / (12 * h)
            assert abs(fd - tab) <= 1e-6 * max(abs(tab), abs(getattr(tf, name)))


def test_frame_selects_width_pair(spec):
    fr_tq, fr_tm = frame(spec, "tq", 0.1), frame(spec, "tm", 0.1)
    tf = eval_timefuncs(spec, "tq", 0.1)
    assert fr_tq.width == tf.Xi_P and fr_tq.width_dot == tf.Xi_X
    assert fr_tm.width == eval_timefuncs(spec, "tm", 0.1).xi


def test_xi_arg_continuous(spec):
    t = np.linspace(-2.0, 2.0, 4001)
    arg = eval_timefuncs(spec, "tm", t).xi_arg
    assert np.max(np.abs(np.diff(arg))) < 0.1
