import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "sphere area oracle",
    2: "ball volume oracle",
    3: "homogeneity of area and volume",
    4: "geodesic closed form vs RK4, pole closure",
    5: "characteristic curves on the sphere",
    6: "geodesic velocity identities",
    7: "calibration divergence constancy",
    8: "flux identity and saturation",
    9: "stationarity of A - kappa V",
    10: "calibration estimate on slab and sphere",
    11: "main inequality on random family",
    12: "volume-matching radius",
    13: "convexity of f",
    14: "CLI determinism",
}

_node_criterion: dict[str, int] = {}
_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number exercised by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _node_criterion[item.nodeid] = int(mark.args[0])


def pytest_runtest_logreport(report):
    k = _node_criterion.get(report.nodeid)
    if k is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        _outcomes.setdefault(k, []).append(report.passed and not report.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _outcomes:
            continue
        status = "PASS" if all(_outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d} {status}: {CRITERIA[k]}")


@pytest.fixture(scope="session")
def run_cli():
    def _run(*args, env=None, cwd=None):
        return subprocess.run([sys.executable, "-m", "heisenberg_iso.cli", *map(str, args)],
                              capture_output=True, text=True, env=env, cwd=cwd)

    return _run
