import pytest
from hypothesis import settings

from microcurve import REFERENCE_MATRIX, REFERENCE_SHELL, build_buckling_table

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# moduli in the order the oracles expect: shell kappa, mu, matrix kappa, mu
REFERENCE_MODULI = (2.1e9, 1.26e9, 4.0e9, 1.2e6)
MU_M = 1.2e6


@pytest.fixture(scope="session")
def table():
    return build_buckling_table(REFERENCE_SHELL, REFERENCE_MATRIX)


@pytest.fixture(scope="session")
def mats():
    return REFERENCE_MODULI


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import lines

    rows = lines()
    if rows:
        terminalreporter.section("acceptance criteria")
        for row in rows:
            terminalreporter.write_line(row)
