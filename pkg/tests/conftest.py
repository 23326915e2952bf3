import math
import random

import pytest

from polybilliard.polygon import validate_polygon

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[n] = ("PASS" if rep.passed else "FAIL", text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}")


def random_hexagon(rng: random.Random):
    """A star-shaped hexagon around the origin with random angles and radii."""
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(6))
        gaps = [(angles[(i + 1) % 6] - angles[i]) % (2 * math.pi) for i in range(6)]
        if min(gaps) < 0.25 or max(gaps) > 2.0:
            continue
        radii = [rng.uniform(0.6, 1.4) for _ in range(6)]
        pts = [(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]
        try:
            return validate_polygon(pts, name="hexagon")
        except ValueError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240611)
