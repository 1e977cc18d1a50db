import sys

from hypothesis import HealthCheck, settings

from drinfeld_forms.expansions import Expander

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_EXPANDERS = {}


def expander(q, r):
    """Shared Expander so expensive series are built once per session."""
    key = (q, r)
    if key not in _EXPANDERS:
        _EXPANDERS[key] = Expander(q, r)
    return _EXPANDERS[key]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
