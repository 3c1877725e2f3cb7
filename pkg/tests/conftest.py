"""Shared fixtures: group sessions and the expensive cell computations.

The heavyweight cell data (extended affine rank 4 at ball 10, built from
sources out to length 20) is computed once per session and shared between
the cells tests and the acceptance criteria.  The acceptance module reports
one line per criterion in the terminal summary.
"""

import sys

import pytest

sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))

from klcells import cells, coxeter


@pytest.fixture(scope="session")
def affA3():
    return coxeter.get_group("affineA", 3)


@pytest.fixture(scope="session")
def affA4():
    return coxeter.get_group("affineA", 4, max_elements=500_000)


@pytest.fixture(scope="session")
def extA4():
    return coxeter.get_group("extAffineA", 4, max_elements=500_000)


@pytest.fixture(scope="session")
def finA3():
    return coxeter.get_group("finiteA", 3)


@pytest.fixture(scope="session")
def finA4():
    return coxeter.get_group("finiteA", 4)


@pytest.fixture(scope="session")
def univ2():
    return coxeter.get_group("universal", 2)


@pytest.fixture(scope="session")
def univ3():
    return coxeter.get_group("universal", 3)


@pytest.fixture(scope="session")
def cells_extA4_10(extA4):
    return cells.cell_partition(extA4, 10)


@pytest.fixture(scope="session")
def cells_affA3_8(affA3):
    return cells.cell_partition(affA3, 8)


@pytest.fixture(scope="session")
def cells_univ2_9(univ2):
    return cells.cell_partition(univ2, 9)


@pytest.fixture(scope="session")
def cells_univ3_8(univ3):
    return cells.cell_partition(univ3, 8)


@pytest.fixture(scope="session")
def cells_finA3(finA3):
    return cells.cell_partition(finA3, 3)


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: dict = {}


def record_criterion(number: int, description: str, passed: bool):
    _ACCEPTANCE[number] = (description, passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        description, passed = _ACCEPTANCE[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {mark}  {description}")
