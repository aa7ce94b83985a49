import pytest

from ipset.exact import PointSet, make_set, PositionClass
from ipset.search import find_sets, minimal_diameter

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rectangle():
    return make_set(1, [(0, 0), (4, 0), (4, 3), (0, 3)])


@pytest.fixture
def unit_equilateral():
    return make_set(3, [(0, 0), (1, 0), ("1/2", "1/2")])


@pytest.fixture
def facher3():
    return make_set(1, [(-4, 0), (0, 0), (4, 0), (0, 3)])


@pytest.fixture(scope="session")
def semi_minimal():
    """Minimal semi-general witnesses for n = 3..7."""
    return {n: minimal_diameter(n, PositionClass.SEMI_GENERAL, d_max=60) for n in range(3, 8)}


@pytest.fixture(scope="session")
def semi_search_sets(semi_minimal):
    """Semi-general sets with n >= 4 from exhaustive search at d <= 16, plus minimal witnesses."""
    out = set()
    for d in range(1, 17):
        n = 4
        while True:
            found = find_sets(n, d, PositionClass.SEMI_GENERAL)
            if not found:
                break
            out.update(found)
            n += 1
    for n, res in semi_minimal.items():
        if n >= 4:
            out.update(res.witnesses)
    return sorted(out, key=PointSet.key)
