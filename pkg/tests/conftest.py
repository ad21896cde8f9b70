import pytest
from hypothesis import strategies as st

from tgscodes.algebra import Tgs
from tgscodes.fixtures import build_chain2, build_m3, build_m3xm3, build_p3


@pytest.fixture
def m3():
    return build_m3()


@pytest.fixture
def p3():
    return build_p3()


@pytest.fixture
def m3xm3():
    return build_m3xm3()


@pytest.fixture
def chain2():
    return build_chain2()


def chain(m, name=""):
    return Tgs.from_functions([str(i) for i in range(m)], 0, max, lambda x, y, z: min(x, y, z), name=name)


# valid structures: chains with max/min, and max/min on a chain with a twisted gamma
chains = st.integers(min_value=1, max_value=4).map(chain)


@st.composite
def words(draw, t, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    return tuple(draw(st.lists(st.sampled_from(t.carrier), min_size=n, max_size=n)))


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        name = report.nodeid.split("::")[-1]
        number = name.split("_")[2]
        _ACCEPTANCE.setdefault(number, []).append((name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, runs in _ACCEPTANCE.items():
        failed = [n for n, ok in runs if not ok]
        verdict = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} ({len(runs) - len(failed)}/{len(runs)} checks)")
        for n in failed:
            terminalreporter.write_line(f"    failed: {n}")
