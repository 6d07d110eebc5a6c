"""Shared test fixtures."""

import numpy as np
import pytest

from sidelobe.seqcore import UnimodularSequence


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", help="run the long experiment reproductions")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running experiment reproductions")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def env_vars(monkeypatch):
    """Keep environment overrides out of every test unless a test sets them."""
    monkeypatch.delenv("SIDELOBE_SEED", raising=False)
    monkeypatch.delenv("SIDELOBE_JOBS", raising=False)
    monkeypatch.delenv("SIDELOBE_LOG_LEVEL", raising=False)


@pytest.fixture
def ones2():
    """x = [1, 1], the N=2 fixed point of MISL and CAN."""
    return UnimodularSequence([0.0, 0.0])


@pytest.fixture
def barker3():
    """x = [1, 1, -1]."""
    return UnimodularSequence([0.0, 0.0, np.pi])


@pytest.fixture
def ones3():
    return UnimodularSequence(np.zeros(3))


def phases_close(a: UnimodularSequence, b: UnimodularSequence, atol: float = 1e-9) -> bool:
    """Compare sequences on the unit circle, ignoring 2*pi wraps."""
    return bool(np.allclose(a.values, b.values, rtol=0, atol=atol))
