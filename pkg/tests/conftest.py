import itertools

import pytest

from mie_nd import make_params

SWEEP_POTENTIALS = [(1.0, 0.0, 0.0), (2.0, 1.0, 0.0), (2.0, 1.0, 1.0), (1.0, 0.5, 0.0)]
SWEEP_DIMS = [3, 4, 5]
SWEEP_ELLS = [0, 1]

SWEEP = list(itertools.product(SWEEP_POTENTIALS, SWEEP_DIMS, SWEEP_ELLS))


def sweep_id(case):
    (A, B, C), N, ell = case
    return f"A{A:g}-B{B:g}-C{C:g}-N{N}-l{ell}"


@pytest.fixture
def hydrogen():
    return make_params(1.0, 0.0, 0.0)


@pytest.fixture
def kratzer():
    return make_params(2.0, 1.0, 0.0)


# acceptance criteria record one line each; printed in the terminal summary
ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
