import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from grnneuron import NeuronParameters, networks
from grnneuron.presets import calibrated_parameters

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def defaults():
    return NeuronParameters()


@pytest.fixture(scope="session")
def calibrated():
    return calibrated_parameters()


@pytest.fixture(scope="session")
def or_spec():
    return networks.spec("two_layer_or")


@pytest.fixture(scope="session")
def and_spec():
    return networks.spec("two_layer_and")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


# -- acceptance report --------------------------------------------------------

ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def report(request):
    """Record one acceptance line: ``report(n, ok, detail, seconds)``."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def record(n, ok, detail, seconds):
        line = f"criterion {str(n):>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.1f} s]"
        lines[n] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines, key=lambda k: (int(str(k).split()[0]), str(k))):
            terminalreporter.write_line(lines[n])
