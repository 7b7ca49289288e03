"""Golden reports: every listed command must reproduce its stored report byte for byte.

Regenerate with ``python3 tests/test_golden.py --update``.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

from riskit.cli import run

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"

CASES = {
    "check_r_z3": ["check", "data/r_z3.json"],
    "rmult_r_z3": ["rmult", "data/r_z3.json"],
    "functor_r_s3": ["functor", "r", "data/s3.json"],
    "functor_l_r_z3": ["functor", "l", "data/r_z3.json"],
    "enumerate_3": ["enumerate", "3", "--up-to-iso"],
    "iso_r_z3": ["iso", "data/r_z3.json", "data/r_z3.json"],
    "color_lens3": ["color", "data/lens3.txt", "data/r_z3.json", "--list"],
    "fundamental_lens3": ["fundamental", "data/lens3.txt", "--quotient", "--eliminate"],
    "lens_5": ["lens", "5", "--all-checks"],
    "lens_4_z2": ["lens", "4", "--all-checks", "--pi1", "Z2"],
    "effective_4_2": ["effective", "4", "2"],
    "effective_2_4": ["effective", "2", "4"],
    "homcount_s3_s3": ["homcount", "data/s3.json", "S3", "--cross-check-risandle"],
    "lens_5_text": ["lens", "5", "--all-checks", "--text"],
}


def render(argv: list[str]) -> str:
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        return run(argv)[2]
    finally:
        os.chdir(cwd)


def golden_path(name: str) -> Path:
    return GOLDEN / (name + (".txt" if name.endswith("_text") else ".json"))


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_report(name):
    assert render(CASES[name]) == golden_path(name).read_text()


if __name__ == "__main__":
    if "--update" in sys.argv:
        GOLDEN.mkdir(exist_ok=True)
        for name, argv in CASES.items():
            golden_path(name).write_text(render(argv))
        print(f"wrote {len(CASES)} golden reports")
