"""Analytic per-tier dependency probabilities and their tier-weighted mean.

Per tier, with ``g = gamma`` and ``nu`` the centre distance (both in cell
radii):

================  ===============  =================================================
type              gamma interval   value
================  ===============  =================================================
I,  case 1        [nu-2, nu-1)     (g + 2 - nu)^4 / (18 sqrt 3)
I,  case 2        [nu-1, nu)       (1 - (g+1-nu)^4 - (nu-g)^4 / 2) / (9 sqrt 3)
                                   + (g+1-nu)^4 / 54
I,  case 3        [nu, inf)        0
II, case 1        [nu-2, nu)       0
II, case 2        [nu, inf)        1
III, case 1       [nu-2, nu-1)     0
III, case 2       [nu-1, nu)       1 - (1 - (g+1-nu)^2 / 3)^2
III, case 3       [nu, inf)        0
================  ===============  =================================================

Below ``nu - 2`` the tier is out of reach and every type is 0 (case 0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import Tier, TierTable

C_CASE1 = 1.0 / (18.0 * math.sqrt(3.0))
C_CASE2 = 1.0 / (9.0 * math.sqrt(3.0))
C_CASE2_EDGE = 1.0 / 54.0


@dataclass(frozen=True)
class CaseLabel:
    dependency_type: int
    case_index: int
    gamma_low: float
    gamma_high: float  # math.inf for the unbounded case


def case_label(dependency_type: int, gamma: float, nu: float) -> CaseLabel:
    """Which case of ``dependency_type`` applies at ``(gamma, nu)``."""
    if dependency_type not in (1, 2, 3):
        raise ValueError(f"dependency type must be 1, 2 or 3, got {dependency_type}")
    if gamma < nu - 2.0:
        return CaseLabel(dependency_type, 0, -math.inf, nu - 2.0)
    if dependency_type == 2:
        if gamma < nu:
            return CaseLabel(2, 1, nu - 2.0, nu)
        return CaseLabel(2, 2, nu, math.inf)
    if gamma < nu - 1.0:
        return CaseLabel(dependency_type, 1, nu - 2.0, nu - 1.0)
    if gamma < nu:
        return CaseLabel(dependency_type, 2, nu - 1.0, nu)
    return CaseLabel(dependency_type, 3, nu, math.inf)


def p1_j(gamma: float, nu: float) -> float:
    """Type I probability for one tier."""
    case = case_label(1, gamma, nu).case_index
    if case == 1:
        return C_CASE1 * (gamma + 2.0 - nu) ** 4
    if case == 2:
        near = (gamma + 1.0 - nu) ** 4
        far = (nu - gamma) ** 4
        return C_CASE2 * (1.0 - near - 0.5 * far) + C_CASE2_EDGE * near
    return 0.0


def p2_j(gamma: float, nu: float) -> float:
    """Type II probability for one tier: 1 once the access points hear each other."""
    return 1.0 if gamma >= nu else 0.0


def p3_j(gamma: float, nu: float) -> float:
    """Type III probability for one tier."""
    if case_label(3, gamma, nu).case_index != 2:
        return 0.0
    s = gamma + 1.0 - nu
    return 1.0 - (1.0 - s * s / 3.0) ** 2


PER_TIER = {1: p1_j, 2: p2_j, 3: p3_j}


@dataclass(frozen=True)
class TierProbability:
    tier: int
    p1: float
    p2: float
    p3: float
    cases: tuple[CaseLabel, CaseLabel, CaseLabel]

    def get(self, dependency_type: int) -> float:
        return (self.p1, self.p2, self.p3)[dependency_type - 1]


def tier_probability(tier: Tier, gamma: float) -> TierProbability:
    nu = tier.nu
    return TierProbability(
        tier=tier.index,
        p1=p1_j(gamma, nu),
        p2=p2_j(gamma, nu),
        p3=p3_j(gamma, nu),
        cases=tuple(case_label(t, gamma, nu) for t in (1, 2, 3)),
    )


@dataclass(frozen=True)
class AggregateProbability:
    p1: float
    p2: float
    p3: float
    j0: int
    total_cells: int
    empty: bool = False

    def get(self, dependency_type: int) -> float:
        return (self.p1, self.p2, self.p3)[dependency_type - 1]


def weighted_mean(pairs) -> tuple[float, int]:
    """``(sum v * n / sum n, sum n)`` over ``(value, count)`` pairs."""
    total = 0
    acc = 0.0
    for value, count in pairs:
        acc += value * count
        total += count
    return (acc / total if total else 0.0), total


def aggregate(table: TierTable, gamma: float) -> AggregateProbability:
    """Tier-weighted probabilities over tiers ``1..j0``.

    Raises:
        ValueError: if ``table`` stops short of ``gamma + 2`` and could be
            missing tiers that still contribute.
    """
    if not table.covers(gamma):
        raise ValueError(
            f"tier table too small: nu_max={table.nu_max:g} < gamma + 2 = {gamma + 2:g}")
    active = table.active(gamma)
    if not active:
        return AggregateProbability(0.0, 0.0, 0.0, j0=0, total_cells=0, empty=True)
    probs = [tier_probability(t, gamma) for t in active]
    means = []
    for typ in (1, 2, 3):
        m, total = weighted_mean((p.get(typ), t.count) for p, t in zip(probs, active))
        means.append(m)
    return AggregateProbability(*means, j0=len(active), total_cells=total)
