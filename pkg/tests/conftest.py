from __future__ import annotations

from functools import lru_cache

import pytest

from bsshift.engine import g1_matrix
from bsshift.polynomial import parse_polynomial
from bsshift.singularity import make_singularity


@lru_cache(maxsize=None)
def cls(kind: str, exponents: tuple[int, ...], normalization: str = "unit"):
    return make_singularity(kind, exponents, normalization)


@lru_cache(maxsize=None)
def g1(kind: str, exponents: tuple[int, ...], normalization: str = "unit"):
    return g1_matrix(cls(kind, exponents, normalization))


def poly(s, text: str):
    return parse_polynomial(text, len(s.J))


# two-variable classes used by the property suites
PROPERTY_CLASSES = [
    ("bp", (7, 5), "unit"),
    ("bp", (9, 4), "unit"),
    ("bp", (7, 6), "reciprocal"),
    ("bp", (8, 7), "unit"),
    ("bp", (6, 5), "reciprocal"),
    ("loop", (6, 5), "reciprocal"),
    ("loop", (5, 3), "unit"),
    ("chain", (7, 5), "reciprocal"),
    ("chain", (4, 6), "unit"),
]


@pytest.fixture(params=PROPERTY_CLASSES, ids=lambda c: f"{c[0]}{c[1]}-{c[2]}")
def property_class(request):
    return cls(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.VERDICTS):
        terminalreporter.write_line(module.VERDICTS[number])
