import pytest

from vcsh.workspace import loads

FIX1 = """\
type T = { a, b }
world I = { i1, i2 }
world B = { b1 }
evolvent f : B -> I = { b1 -> i1 }
func g : T -> T = { a -> b, b -> b }
individual h_aa : I -> T = { i1 -> a, i2 -> a }
individual h_ab : I -> T = { i1 -> a, i2 -> b }
individual h_ba : I -> T = { i1 -> b, i2 -> a }
individual h_bb : I -> T = { i1 -> b, i2 -> b }
"""

CAB = "concept Cab over x : (I -> T) at I := x = h_ab | x = h_ba\n"

_RESULTS: dict = {}


@pytest.fixture
def fix1_text():
    return FIX1


@pytest.fixture
def fix1():
    return loads(FIX1)


@pytest.fixture
def fix1_cab():
    return loads(FIX1 + CAB)


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda n: int(n.split("_")[2])):
        status = "PASS" if _RESULTS[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
