from __future__ import annotations

import pytest

from riskit import cyclic_group, dihedral_group, direct_product_group, make_group, quaternion_group, symmetric_group

CATALOG_SPECS = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "S3", "D4", "Q8"]
SMALL_SPECS = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3"]


def catalog():
    return [(spec, make_group(spec)) for spec in CATALOG_SPECS]


def small_groups():
    """All groups of order at most 6, one per isomorphism type."""
    return [(spec, make_group(spec)) for spec in SMALL_SPECS]


@pytest.fixture(scope="session")
def group_catalog():
    return catalog()


@pytest.fixture(scope="session")
def groups_up_to_6():
    return small_groups()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
