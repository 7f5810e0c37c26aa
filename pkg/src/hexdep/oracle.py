"""Model-truth estimates of the dependency probabilities.

Two routes that share nothing with :mod:`hexdep.closedform`:

* ``quadrature_p1`` integrates the type I integrand (area of the partner
  station's admissible region, for each position of the first station) with
  the midpoint rule and exact polygon areas;
* ``mc_*`` draws station pairs uniformly from their cells and labels each
  pair with the event definitions in :func:`classify_pair`.

Random streams are ``SeedSequence(seed, spawn_key=(stratum, worker))`` with a
fixed per-worker quota, so results depend only on ``(seed, samples, workers)``.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .hexgeom import ORIGIN, SQRT3, Hexagon, Point, _sample_hex, contains
from .lattice import Tier, TierTable, tier_orbits

CHUNK = 1 << 17


class Dependency(enum.IntEnum):
    NONE = 0
    TYPE_I = 1
    TYPE_II = 2
    TYPE_III = 3


@dataclass(frozen=True)
class Scenario:
    """Reference cell at the origin and one co-channel cell of a tier."""

    gamma: float
    tier: Tier
    cell1: Hexagon
    cell2: Hexagon

    def __post_init__(self) -> None:
        r = self.cell1.radius
        d = math.hypot(self.cell2.center.x - self.cell1.center.x,
                       self.cell2.center.y - self.cell1.center.y)
        if abs(d - self.tier.nu * r) > 1e-9 * max(r, 1.0):
            raise ValueError(f"cell distance {d} does not match tier nu {self.tier.nu}")
        if not self.gamma > 0:
            raise ValueError("gamma must be > 0")

    @property
    def interference_radius(self) -> float:
        return self.gamma * self.cell1.radius

    @property
    def ap1_range(self) -> Hexagon:
        return Hexagon(self.cell1.center, self.interference_radius)

    @property
    def ap2_range(self) -> Hexagon:
        return Hexagon(self.cell2.center, self.interference_radius)

    @property
    def aps_interfere(self) -> bool:
        return contains(self.ap1_range, self.cell2.center)

    def normalized_ap2(self) -> tuple[float, float]:
        """Centre of cell 2 relative to cell 1, in cell radii."""
        r = self.cell1.radius
        return ((self.cell2.center.x - self.cell1.center.x) / r,
                (self.cell2.center.y - self.cell1.center.y) / r)


def make_scenario(gamma: float, tier: Tier, representative: Point | None = None,
                  cell_radius: float = 1.0) -> Scenario:
    rep = tier.representative if representative is None else representative
    return Scenario(
        gamma=gamma,
        tier=tier,
        cell1=Hexagon(ORIGIN, cell_radius),
        cell2=Hexagon(Point(rep.x * cell_radius, rep.y * cell_radius), cell_radius),
    )


def classify_pair(s: Scenario, sta1: Point, sta2: Point) -> Dependency:
    """Label one station pair; precedence is II, then III, then I."""
    if not contains(s.cell1, sta1):
        raise ValueError(f"station 1 {sta1} is outside its cell")
    if not contains(s.cell2, sta2):
        raise ValueError(f"station 2 {sta2} is outside its cell")
    if s.aps_interfere:
        return Dependency.TYPE_II
    if contains(s.ap1_range, sta2) or contains(s.ap2_range, sta1):
        return Dependency.TYPE_III
    if contains(Hexagon(sta2, s.interference_radius), sta1):
        return Dependency.TYPE_I
    return Dependency.NONE


@dataclass(frozen=True)
class McConfig:
    samples: int = 1_000_000
    seed: int = 42
    workers: int = 1

    def __post_init__(self) -> None:
        if int(self.samples) != self.samples or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an integer in [0, 2**64), got {self.seed}")

    def quotas(self, samples: int | None = None) -> list[int]:
        n = self.samples if samples is None else samples
        base, extra = divmod(n, self.workers)
        return [base + (w < extra) for w in range(self.workers)]


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    samples: int
    flagged: bool = False

    @classmethod
    def from_count(cls, hits: int, n: int) -> McEstimate:
        p = hits / n
        return cls(p, math.sqrt(p * (1.0 - p) / n), n)


def _worker_counts(gamma: float, ap2: tuple[float, float], n: int,
                   seed: int, key: tuple[int, ...]) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))
    counts = np.zeros(4, dtype=np.int64)
    cx2, cy2 = ap2
    done = 0
    while done < n:
        m = min(CHUNK, n - done)
        a = _sample_hex(0.0, 0.0, 1.0, m, rng)
        b = _sample_hex(cx2, cy2, 1.0, m, rng)
        labels = kernels.classify(a[:, 0], a[:, 1], b[:, 0], b[:, 1], gamma, cx2, cy2)
        counts += np.bincount(labels, minlength=4)
        done += m
    return counts


def mc_label_counts(s: Scenario, cfg: McConfig, samples: int | None = None,
                    stratum: int = 0) -> np.ndarray:
    """Counts of NONE / I / II / III over ``samples`` pair draws."""
    quotas = cfg.quotas(samples)
    ap2 = s.normalized_ap2()
    jobs = [(s.gamma, ap2, q, cfg.seed, (stratum, w)) for w, q in enumerate(quotas)]
    if cfg.workers == 1:
        parts = [_worker_counts(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda job: _worker_counts(*job), jobs))
    return np.sum(parts, axis=0)


def mc_tier_estimates(s: Scenario, cfg: McConfig) -> dict[int, McEstimate]:
    counts = mc_label_counts(s, cfg)
    n = int(counts.sum())
    return {t: McEstimate.from_count(int(counts[t]), n) for t in (1, 2, 3)}


def mc_tier_probability(s: Scenario, type_i: int, cfg: McConfig) -> McEstimate:
    """Monte Carlo estimate of one per-tier probability."""
    if type_i not in (1, 2, 3):
        raise ValueError(f"type must be 1, 2 or 3, got {type_i}")
    return mc_tier_estimates(s, cfg)[type_i]


def _allocate(samples: int, weights: list[int]) -> list[int]:
    """Largest-remainder split of ``samples`` proportional to ``weights``."""
    total = sum(weights)
    raw = [samples * w / total for w in weights]
    alloc = [int(math.floor(r)) for r in raw]
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - alloc[i]), i))
    for i in order[: samples - sum(alloc)]:
        alloc[i] += 1
    return alloc


@dataclass(frozen=True)
class Stratum:
    """One symmetry orbit of a tier: ``weight`` cells sharing ``representative``."""

    tier: Tier
    representative: Point
    weight: int
    samples: int
    counts: tuple[int, int, int, int]

    def estimate(self, type_i: int) -> McEstimate:
        return McEstimate.from_count(self.counts[type_i], self.samples)


def mc_strata(table: TierTable, gamma: float, cfg: McConfig) -> list[Stratum]:
    """Label counts per tier orbit, samples split in proportion to orbit size."""
    if not table.covers(gamma):
        raise ValueError(
            f"tier table too small: nu_max={table.nu_max:g} < gamma + 2 = {gamma + 2:g}")
    cells = [(t, rep, n) for t in table.active(gamma) for rep, n in tier_orbits(t)]
    if not cells:
        return []
    alloc = _allocate(cfg.samples, [n for _, _, n in cells])
    if min(alloc) < 1:
        raise ValueError(
            f"{cfg.samples} samples cannot cover {len(cells)} tier orbits; increase samples")
    out = []
    for stratum, ((tier, rep, n), m) in enumerate(zip(cells, alloc)):
        counts = mc_label_counts(make_scenario(gamma, tier, rep), cfg, samples=m, stratum=stratum)
        out.append(Stratum(tier, rep, n, m, tuple(int(c) for c in counts)))
    return out


def tier_estimates(strata: list[Stratum], tier_index: int) -> dict[int, McEstimate]:
    """Estimates for one tier, merging its orbit strata."""
    return combine_strata([s for s in strata if s.tier.index == tier_index])


def combine_strata(strata: list[Stratum]) -> dict[int, McEstimate]:
    """Tier-weighted estimates with the stratified standard error.

    The error is exactly 0 for a station-independent event such as type II.
    """
    if not strata:
        return {t: McEstimate(0.0, 0.0, 0, flagged=True) for t in (1, 2, 3)}
    total = sum(s.weight for s in strata)
    n = sum(s.samples for s in strata)
    est = np.zeros(4)
    var = np.zeros(4)
    for s in strata:
        p = np.asarray(s.counts, dtype=float) / s.samples
        w = s.weight / total
        est += w * p
        var += w * w * p * (1.0 - p) / s.samples
    return {t: McEstimate(float(est[t]), float(math.sqrt(var[t])), n) for t in (1, 2, 3)}


def mc_aggregate_all(table: TierTable, gamma: float, cfg: McConfig) -> dict[int, McEstimate]:
    """Monte Carlo estimates of all three tier-weighted aggregates."""
    return combine_strata(mc_strata(table, gamma, cfg))


def mc_aggregate(table: TierTable, gamma: float, type_i: int, cfg: McConfig) -> McEstimate:
    if type_i not in (1, 2, 3):
        raise ValueError(f"type must be 1, 2 or 3, got {type_i}")
    return mc_aggregate_all(table, gamma, cfg)[type_i]


def quadrature_tier_p1(gamma: float, tier: Tier, grid_n: int = 512) -> float:
    """Orbit-weighted :func:`quadrature_p1` over every cell of a tier."""
    acc = 0.0
    for rep, n in tier_orbits(tier):
        acc += n * quadrature_p1(make_scenario(gamma, tier, rep), grid_n)
    return acc / tier.count


def quadrature_p1(s: Scenario, grid_n: int = 512) -> float:
    """Midpoint-rule value of the type I double integral over cell 1."""
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    if s.aps_interfere:
        return 0.0
    cx2, cy2 = s.normalized_ap2()
    hx = 2.0 / grid_n
    hy = SQRT3 / grid_n
    xs = -1.0 + (np.arange(grid_n) + 0.5) * hx
    ys = -0.5 * SQRT3 + (np.arange(grid_n) + 0.5) * hy
    total = 0.0
    rows = max(1, CHUNK // grid_n)
    for start in range(0, grid_n, rows):
        X, Y = np.meshgrid(xs[start:start + rows], ys, indexing="ij")
        total += float(kernels.quad_integrand(X.ravel(), Y.ravel(), s.gamma, cx2, cy2).sum())
    # (4/27) = 1 / (cell area)^2
    return 4.0 / 27.0 * total * hx * hy
