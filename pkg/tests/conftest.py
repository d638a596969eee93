import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from toricmax.fan import hirzebruch, product_fan, projective, star_subdivision, weighted_p112  # noqa: E402


def small_fans():
    """A handful of fans of dimension 1..3 used by the module tests."""
    p1, p2 = projective(1), projective(2)
    blow = star_subdivision(p2, next(c.id for c in p2.cones if c.dim == 2))
    return {
        "P1": p1,
        "P2": p2,
        "P3": projective(3),
        "F1": hirzebruch(1),
        "F2": hirzebruch(2),
        "P112": weighted_p112(),
        "P1xP1": product_fan(p1, p1),
        "blowup_P2": blow,
        "P1xP2": product_fan(p1, p2),
    }


@pytest.fixture(scope="session")
def fans():
    return small_fans()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
