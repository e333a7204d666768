import pytest

from nearrings.maps import canonical_maps, mul_table
from nearrings.pgroup import add_table, make_params

ACCEPTANCE_TUPLES = [(3, 1, 1, 1), (3, 2, 1, 1), (3, 2, 2, 1), (3, 2, 2, 2), (5, 1, 1, 1)]


@pytest.fixture(scope="session")
def g27():
    return make_params(3, 1, 1, 1)


@pytest.fixture(scope="session")
def g81():
    return make_params(3, 2, 1, 1)


@pytest.fixture(scope="session")
def canonical27(g27):
    return canonical_maps(g27)


@pytest.fixture(scope="session")
def tables27(g27, canonical27):
    return add_table(g27), mul_table(g27, canonical27)


@pytest.fixture(scope="session")
def canonical81(g81):
    return canonical_maps(g81)


@pytest.fixture(scope="session")
def tables81(g81, canonical81):
    return add_table(g81), mul_table(g81, canonical81)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call" and status != "error":
                continue
            if "test_acceptance.py" not in rep.nodeid:
                continue
            name = rep.nodeid.rsplit("::", 1)[-1]
            if not name.startswith("test_criterion_"):
                continue
            base = name.split("[", 1)[0]
            results.setdefault(base, True)
            results[base] = results[base] and status == "passed"
    if results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(results):
            label = name.removeprefix("test_")
            terminalreporter.write_line(
                f"{label}: {'PASS' if results[name] else 'FAIL'}"
            )
