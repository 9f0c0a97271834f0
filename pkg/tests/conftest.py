import math

import pytest

from mhtc import FadingSpec, HopModel, NetworkConfig, rayleigh_coeffs


@pytest.fixture
def rayleigh3():
    return rayleigh_coeffs(FadingSpec(alpha=3.0, beta=1.0))


@pytest.fixture
def pi_model():
    # K = pi makes kappa = (1 - gamma)/gamma, convenient for hand checks
    return HopModel(G=1.0, K=math.pi, model_tag="pathloss_lower")


@pytest.fixture
def base_cfg(pi_model):
    return NetworkConfig(lam=0.1, gamma=0.5, R=4.0, m=1, hop_model=pi_model)


_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, ok, detail)``."""
    def record(number, ok, detail):
        _CRITERIA[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
