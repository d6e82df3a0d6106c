import pytest
from hypothesis import HealthCheck, settings

from bidisc.fixtures import fixture

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def classified():
    """Classifications of the fixture maps, computed once per session."""
    from bidisc.classifier import classify

    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = classify(fixture(name))
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
