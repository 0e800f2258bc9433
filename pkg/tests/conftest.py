import pytest

from tdq.model import Regime, Sign, SystemKind, SystemSpec

CASES = {
    (Regime.OVER, Sign.POS): (5.0, 2.0),
    (Regime.OVER, Sign.NEG): (-5.0, 2.0),
    (Regime.CRITICAL, Sign.POS): (4.0, 2.0),
    (Regime.CRITICAL, Sign.NEG): (-4.0, 2.0),
    (Regime.UNDER, Sign.POS): (3.0, 2.0),
    (Regime.UNDER, Sign.NEG): (-3.0, 2.0),
}


def case_ids():
    return [f"{r.value}-{s.value}" for r, s in CASES]


@pytest.fixture(params=list(CASES), ids=case_ids())
def spec(request):
    return SystemSpec.create(*CASES[request.param])


@pytest.fixture(params=list(SystemKind), ids=[k.value for k in SystemKind])
def kind(request):
    return request.param


def in_domain_times(spec, kind, count=7):
    """A few representative elapsed times inside the domain of ``kind``."""
    import numpy as np
    if kind is SystemKind.TO:
        top = 2.0 if spec.upsilon > 0 else 0.8 / spec.abs_upsilon
        return np.linspace(0.0, top, count)
    return np.linspace(-0.15, 0.35, count)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
