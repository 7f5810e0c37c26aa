import math

import numpy as np
import pytest

from hexdep.hexgeom import ConvexPolygon, Point

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance check."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((label, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {label} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label} {detail}")


def convex_hull(points) -> ConvexPolygon:
    """Monotone-chain hull, CCW; test helper independent of the package."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return ConvexPolygon()

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return ConvexPolygon()
    return ConvexPolygon(tuple(Point(x, y) for x, y in hull))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


SQRT3 = math.sqrt(3.0)
