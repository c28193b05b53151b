from __future__ import annotations

from functools import lru_cache

import pytest

from crgkit.groups import available_exceptionals, build_gde, gde_order, load_exceptional
from crgkit.reflections import get_arrangement

GRID = [
    (d, e, r)
    for d in range(1, 5)
    for e in range(1, 5)
    for r in range(1, 5)
    if gde_order(d, e, r) <= 10**5
]
SMALL_GRID = [p for p in GRID if gde_order(*p) <= 200]
MEDIUM_GRID = [p for p in GRID if gde_order(*p) <= 2000]
SHIPPED = available_exceptionals()


@lru_cache(maxsize=None)
def gde(d: int, e: int, r: int):
    G = build_gde(d, e, r)
    get_arrangement(G).complete_all()
    return G


@lru_cache(maxsize=None)
def exceptional(name: str):
    G = load_exceptional(name)
    get_arrangement(G).complete_all()
    return G


def grid_id(p) -> str:
    d, e, r = p
    return f"G({d * e},{e},{r})"


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(params=SMALL_GRID, ids=grid_id)
def small_group(request):
    return gde(*request.param)
