from __future__ import annotations

import pytest

from hpeig.exact import SYMBOLIC, ThetaMode

SPECIAL_THETAS = ("1/2", "1", "2")
ALL_MODES = [SYMBOLIC] + [ThetaMode.at(t) for t in SPECIAL_THETAS]

CRITERIA = {
    1: "commutativity of the P_m",
    2: "symmetric eigenvalues, five ways",
    3: "isotypic trace formulas",
    4: "three-variable catalog",
    5: "two-block spectra",
    6: "character identities",
    7: "structural lemmas",
    8: "verify exit codes under mutation",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(props["criterion"], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        runs = _outcomes.get(k)
        if runs is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {k} ({CRITERIA[k]}): {status} [{len(runs or [])} checks]")


@pytest.fixture(params=ALL_MODES, ids=lambda m: f"theta={m}")
def any_mode(request) -> ThetaMode:
    return request.param
