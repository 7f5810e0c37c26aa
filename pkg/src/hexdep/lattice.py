"""Hexagonal cell layout with three-channel reuse and its co-channel tiers.

Cell centres sit on the lattice ``i * b1 + k * b2`` with
``b1 = sqrt(3) * (cos 30, sin 30)`` and ``b2 = sqrt(3) * (0, 1)``, which tiles
the plane with the flat hexagons of :mod:`hexdep.hexgeom`.  Channel
``(i - k) mod 3`` gives every cell six neighbours on other channels; the
co-channel cells of the origin form a triangular lattice of spacing 3 spanned
by ``(3, 0)`` and ``(3/2, 3 sqrt(3)/2)``.  A tier is one distance shell of that
sublattice: ``nu = 3 sqrt(i^2 + i k + k^2)``.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .hexgeom import SQRT3, Point

CELL_BASIS = ((1.5, 0.5 * SQRT3), (0.0, SQRT3))
COCHANNEL_BASIS = ((3.0, 0.0), (1.5, 1.5 * SQRT3))


def cell_center(i: int, k: int) -> Point:
    (ax, ay), (bx, by) = CELL_BASIS
    return Point(i * ax + k * bx, i * ay + k * by)


def channel(i: int, k: int) -> int:
    return (i - k) % 3


def cochannel_point(i: int, k: int) -> Point:
    (ax, ay), (bx, by) = COCHANNEL_BASIS
    return Point(i * ax + k * bx, i * ay + k * by)


@dataclass(frozen=True)
class Tier:
    index: int
    norm: int
    count: int
    representative: Point

    @property
    def nu(self) -> float:
        """Centre distance in cell radii."""
        return 3.0 * math.sqrt(self.norm)


def _shells(nu_max: float) -> dict[int, list[tuple[int, int]]]:
    """Sublattice coordinates grouped by ``i^2 + ik + k^2`` for ``nu < nu_max``."""
    norm_max = (nu_max / 3.0) ** 2
    # i^2 + ik + k^2 >= 3/4 max(|i|,|k|)^2
    bound = int(math.ceil(math.sqrt(norm_max * 4.0 / 3.0))) + 1
    shells: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i in range(-bound, bound + 1):
        for k in range(-bound, bound + 1):
            n = i * i + i * k + k * k
            if n == 0:
                continue
            if 3.0 * math.sqrt(n) < nu_max:
                shells[n].append((i, k))
    return shells


def _polar_angle(p: Point) -> float:
    a = math.atan2(p.y, p.x)
    if a < -1e-12:
        a += 2.0 * math.pi
    return max(a, 0.0)


def rotate60(i: int, k: int) -> tuple[int, int]:
    """Sublattice coordinates rotated by +60 degrees (b1 -> b2, b2 -> b2 - b1)."""
    return -k, i + k


def reflect_x(i: int, k: int) -> tuple[int, int]:
    """Mirror image across the x axis (b1 -> b1, b2 -> b1 - b2)."""
    return i + k, -k


def shell_coords(norm: int) -> list[tuple[int, int]]:
    """Sublattice coordinates of every co-channel centre in shell ``norm``."""
    return _shells(3.0 * math.sqrt(norm) + 1.0)[norm]


def shell_points(norm: int) -> list[Point]:
    """All co-channel centres at squared distance ``9 * norm``."""
    return [cochannel_point(i, k) for i, k in shell_coords(norm)]


def cochannel_tiers(nu_max: float) -> list[Tier]:
    """Co-channel tiers with ``nu < nu_max``, nearest first."""
    if not nu_max > 0:
        raise ValueError(f"nu_max must be > 0, got {nu_max}")
    shells = _shells(nu_max)
    tiers = []
    for j, norm in enumerate(sorted(shells), start=1):
        members = [cochannel_point(i, k) for i, k in shells[norm]]
        rep = min(members, key=_polar_angle)
        tiers.append(Tier(index=j, norm=norm, count=len(members), representative=rep))
    return tiers


def tier_representative(t: Tier) -> Point:
    """Member of the shell with the smallest non-negative polar angle."""
    return min(shell_points(t.norm), key=_polar_angle)


def shell_orbits(norm: int) -> list[list[tuple[int, int]]]:
    """Split a shell into orbits of the 12-element symmetry group of the lattice."""
    remaining = set(shell_coords(norm))
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit = set()
        for start in (seed, reflect_x(*seed)):
            q = start
            for _ in range(6):
                orbit.add(q)
                q = rotate60(*q)
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits


def tier_orbits(t: Tier) -> list[tuple[Point, int]]:
    """``(representative, size)`` for each symmetry orbit of a tier.

    Hexagonal containment is invariant only under the lattice symmetries, so
    cells of one distance shell that lie in different orbits can interfere
    differently; the oracles therefore work orbit by orbit.
    """
    out = []
    for orbit in shell_orbits(t.norm):
        rep = min((cochannel_point(i, k) for i, k in orbit), key=_polar_angle)
        out.append((rep, len(orbit)))
    out.sort(key=lambda item: _polar_angle(item[0]))
    return out


def shell_size_violations(nu_max: float) -> list[Tier]:
    """Tiers below ``nu_max`` whose size is neither 6 nor 12."""
    return [t for t in cochannel_tiers(nu_max) if t.count not in (6, 12)]


@dataclass(frozen=True)
class TierTable:
    """Immutable list of tiers enumerated up to (excluding) ``nu_max``."""

    tiers: tuple[Tier, ...]
    nu_max: float

    @classmethod
    def build(cls, nu_max: float) -> TierTable:
        return cls(tuple(cochannel_tiers(nu_max)), float(nu_max))

    @classmethod
    def for_gamma(cls, gamma: float, margin: float = 1.0) -> TierTable:
        """Table deep enough that every tier with ``nu < gamma + 2`` is present."""
        return cls.build(gamma + 2.0 + margin)

    def covers(self, gamma: float) -> bool:
        return self.nu_max >= gamma + 2.0

    def j0(self, gamma: float) -> int:
        return j0(self.tiers, gamma)

    def active(self, gamma: float) -> tuple[Tier, ...]:
        """Tiers ``1..j0``."""
        return self.tiers[: self.j0(gamma)]


def j0(tiers, gamma: float) -> int:
    """Largest ``j`` with ``nu_j < gamma + 2``, or 0 if none."""
    if isinstance(tiers, TierTable):
        tiers = tiers.tiers
    last = 0
    for t in tiers:
        if t.nu < gamma + 2.0:
            last = t.index
        else:
            break
    return last
