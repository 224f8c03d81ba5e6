import numpy as np
import pytest

from commitlab.beliefs import MedianBelief
from commitlab.contest import ElectionModel, IdealPair
from commitlab.preferences import UtilitySpec

BUILTIN_BELIEFS = {
    "uniform": MedianBelief.uniform(),
    "triangular": MedianBelief.triangular(0.5),
    "power2": MedianBelief.power(2.0),
}

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        _criteria.append((marker.args[0], marker.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    merged = {}
    for number, title, outcome in _criteria:
        ok = merged.get(number, (title, True))[1] and outcome == "passed"
        merged[number] = (title, ok)
    terminalreporter.section("acceptance criteria")
    for number, (title, ok) in sorted(merged.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}")


def make_model(utility="quadratic", belief="uniform", t_l=0.0, t_r=1.0):
    u = UtilitySpec.quadratic() if utility == "quadratic" else UtilitySpec.exponential()
    b = BUILTIN_BELIEFS[belief] if isinstance(belief, str) else belief
    return ElectionModel(u, b, IdealPair(t_l, t_r))


@pytest.fixture
def quad_uniform():
    return make_model()


@pytest.fixture(params=sorted(BUILTIN_BELIEFS))
def builtin_belief(request):
    return BUILTIN_BELIEFS[request.param]


def random_model(rng):
    """Random quadratic/exponential model over uniform, triangular or power beliefs."""
    utility = rng.choice(["quadratic", "exponential"])
    kind = rng.integers(3)
    if kind == 0:
        belief = MedianBelief.uniform()
    elif kind == 1:
        belief = MedianBelief.triangular(float(rng.uniform(0.1, 0.9)))
    else:
        belief = MedianBelief.power(float(rng.uniform(0.5, 3.0)))
    t_l, t_r = np.sort(rng.uniform(0.0, 1.0, 2))
    if t_r - t_l < 0.02:
        t_r = min(1.0, t_l + 0.02)
        t_l = t_r - 0.02
    return make_model(utility, belief, float(t_l), float(t_r))
