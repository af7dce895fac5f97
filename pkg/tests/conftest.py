import sys

import numpy as np
import pytest

from hypreduce import HPoint, convex_hull, regular_ngon
from hypreduce.errors import DegenerateInput


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def regular_pentagon():
    return regular_ngon(5, 1.0)


@pytest.fixture(scope="session")
def regular_triangle():
    return regular_ngon(3, 1.0)


def random_hull(rng, max_points=9, max_radius=3.0):
    """Convex hull of a few random points; retries degenerate draws."""
    while True:
        count = int(rng.integers(3, max_points + 1))
        pts = [HPoint.from_polar(rng.uniform(0.0, max_radius), rng.uniform(0.0, 2 * np.pi))
               for _ in range(count)]
        try:
            return convex_hull(pts)
        except DegenerateInput:
            continue


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        passed, detail = results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
