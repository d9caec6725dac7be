import pytest
from hypothesis import HealthCheck, settings

# deterministic property runs so repeated suite invocations are comparable
settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")

# Measurements that must appear in the run log even when their test passes
# (pytest swallows per-test stdout on success). Tests append lines through
# the ``document`` fixture; the hook replays them after the test summary.
DOCUMENTED_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def document():
    def _add(line: str) -> None:
        DOCUMENTED_RESULTS.append(line)

    return _add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if DOCUMENTED_RESULTS:
        terminalreporter.section("documented results")
        for line in DOCUMENTED_RESULTS:
            terminalreporter.write_line(line)
