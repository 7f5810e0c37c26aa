"""Acceptance suite: one printed PASS/FAIL line per criterion.

Criteria that are mathematically unattainable are left failing; the reason is
printed with the numbers that show it.
"""
import math
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from hexdep import kernels
from hexdep.closedform import aggregate, p1_j, p2_j, p3_j
from hexdep.hexgeom import (
    Hexagon,
    Point,
    area,
    clip_convex,
    hex_to_polygon,
    sample_uniform_array,
    sextant,
)
from hexdep.lattice import TierTable, cochannel_tiers
from hexdep.oracle import McConfig, make_scenario, mc_tier_estimates, quadrature_p1
from hexdep.report import build_report, default_config

from conftest import SQRT3, convex_hull

GOLDEN = Path(__file__).parent / "golden"
TIER1 = cochannel_tiers(4.0)[0]
# chi-square 0.999 quantile, 5 degrees of freedom
CHI2_5_999 = 20.515005652432873


def _table_rows():
    cfg = default_config()
    out = []
    for row in cfg.rates.rows:
        g = cfg.gamma(row.rate_mbps)
        out.append((row.rate_mbps, g, aggregate(TierTable.for_gamma(g), g), cfg.reference[row.rate_mbps]))
    return out


def test_ac1_type2_column_exact(acceptance):
    t0 = time.perf_counter()
    rows = _table_rows()
    elapsed = time.perf_counter() - t0
    bad = [(r, agg.p2, ref.p2) for r, _, agg, ref in rows if abs(agg.p2 - ref.p2) > 1e-4]
    detail = f"runtime {elapsed:.3f}s; " + (
        "all six rows within 1e-4" if not bad else
        "mismatches " + ", ".join(f"r={r:g}: computed {c:.4f} vs printed {p:.4f}" for r, c, p in bad))
    ok = acceptance("AC1 type II column exact", not bad and elapsed < 1.0, detail)
    assert ok, detail


def test_ac2_type1_type3_columns_tolerant(acceptance):
    t0 = time.perf_counter()
    rows = _table_rows()
    elapsed = time.perf_counter() - t0
    lines, ok = [], elapsed < 1.0
    for r, g, agg, ref in rows:
        d1, d3 = abs(agg.p1 - ref.p1), abs(agg.p3 - ref.p3)
        lines.append(f"r={r:g} gamma={g:.4f} dp1={d1:.4f} dp3={d3:.4f}")
        ok &= d1 <= 0.01 and d3 <= 0.01
    r1 = next(agg for r, _, agg, _ in rows if r == 1)
    ok &= round(r1.p1, 4) == 0.0321 and abs(r1.p1 - 1 / (18 * math.sqrt(3))) < 1e-15
    # deviations are part of the report itself
    cfg = default_config()
    rep = build_report(cfg.replace(mc=McConfig(samples=6000, seed=1), grid_n=32), rates=[48])
    devs = rep.rows[0].deviations()
    ok &= devs["dev_ref_p1"] is not None and devs["dev_ref_p3"] is not None
    print("\n".join(lines))
    detail = f"runtime {elapsed:.3f}s; max dp1/dp3 " + \
        f"{max(abs(a.p1 - f.p1) for *_, a, f in rows):.4f}/{max(abs(a.p3 - f.p3) for *_, a, f in rows):.4f}"
    assert acceptance("AC2 type I/III columns within 0.01", ok, detail), "\n".join(lines)


def test_ac3_mc_agrees_with_quadrature(acceptance):
    t0 = time.perf_counter()
    tiers = cochannel_tiers(7.0)[:3]
    cfg = McConfig(samples=1_000_000, seed=2024, workers=1)
    worst, failures = 0.0, []
    for gamma in np.arange(2.0, 4.0 + 1e-9, 0.25):
        for t in tiers:
            s = make_scenario(float(gamma), t)
            est = mc_tier_estimates(s, cfg)[1]
            q = quadrature_p1(s, 512)
            gap = abs(est.estimate - q)
            z = gap / est.stderr if est.stderr > 0 else (0.0 if gap == 0 else math.inf)
            worst = max(worst, z)
            if gap > 4 * est.stderr:
                failures.append(f"gamma={gamma:.2f} tier={t.index}: mc={est.estimate:.6f} "
                                f"quad={q:.6f} se={est.stderr:.2e}")
    elapsed = time.perf_counter() - t0
    detail = f"27 points, worst |z|={worst:.2f}, runtime {elapsed:.1f}s, backend {kernels.BACKEND}"
    ok = acceptance("AC3 Monte Carlo vs quadrature (4 sigma)", not failures and elapsed < 120, detail)
    assert ok, "\n".join(failures)


def test_ac4_closed_form_vs_model(acceptance):
    nu = TIER1.nu
    lines, case1_ok = [], True
    for k in range(8):
        g = nu - 2 + k / 8
        cf, q = p1_j(g, nu), quadrature_p1(make_scenario(g, TIER1), 512)
        good = abs(cf - q) <= 2e-3
        case1_ok &= good
        lines.append(f"case1 I  gamma={g:.4f} closed={cf:.6f} quad={q:.6f} dev={abs(cf - q):.6f}"
                     f"{'' if good else '  > 2e-3'}")
    case2_ok, worst2 = True, 0.0
    cfg = McConfig(samples=1_000_000, seed=77)
    for k in range(8):
        g = nu - 1 + k / 8
        s = make_scenario(g, TIER1)
        d1 = abs(p1_j(g, nu) - quadrature_p1(s, 512))
        d3 = abs(p3_j(g, nu) - mc_tier_estimates(s, cfg)[3].estimate)
        worst2 = max(worst2, d1, d3)
        case2_ok &= d1 <= 0.02 and d3 <= 0.02
        lines.append(f"case2 I  gamma={g:.4f} dev={d1:.6f} | case2 III dev={d3:.6f}")
    print("\n".join(lines))
    acceptance("AC4a case 1 type I within 2e-3", case1_ok,
               "closed form exceeds the model by a factor 2/sqrt(3) (t^4/(18 sqrt3) vs t^4/36)"
               if not case1_ok else "")
    acceptance("AC4b case 2 type I/III within 0.02", case2_ok, f"worst {worst2:.4f}")
    assert case1_ok and case2_ok, "\n".join(lines)


def test_ac5_boundaries_and_continuity(acceptance):
    t0 = time.perf_counter()
    c = 1 / (18 * math.sqrt(3))
    checks = []
    for nu in (3.0, 3 * SQRT3, 6.0, math.sqrt(63)):
        left = nu - 1
        case1_end = (left + 2 - nu) ** 4 / (18 * math.sqrt(3))      # case 1 formula at nu - 1
        checks += [
            abs(case1_end - c) < 1e-12,
            abs(p1_j(left, nu) - c) < 1e-12,
            abs(p1_j(nu - 1e-12, nu) - 1 / 54) < 1e-9,
            abs(p3_j(nu - 1e-12, nu) - 5 / 9) < 1e-9,
            p2_j(nu - 1e-12, nu) == 0.0 and p2_j(nu, nu) == 1.0,
        ]
    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < 1.0
    assert acceptance("AC5 boundary and continuity", ok, f"{sum(checks)}/{len(checks)} checks, {elapsed * 1e3:.1f} ms")


def test_ac6_geometry_properties(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    parts = {}

    ok = True
    for _ in range(300):
        a = convex_hull([tuple(p) for p in rng.uniform(-3, 3, (7, 2))])
        b = convex_hull([tuple(p) for p in rng.uniform(-3, 3, (7, 2))])
        ab, ba = area(clip_convex(a, b)), area(clip_convex(b, a))
        ok &= abs(ab - ba) <= 1e-12 and ab <= min(area(a), area(b)) + 1e-12
    parts["clip"] = ok

    parts["area"] = all(abs(area(hex_to_polygon(Hexagon(Point(x, -x), r))) - 1.5 * SQRT3 * r * r) < 1e-12 * r * r
                        for x, r in [(0, 1), (3, 2), (-7, 0.3), (100, 5)])

    n = 1_000_000
    h = Hexagon(Point(0.0, 0.0), 1.0)
    xy = sample_uniform_array(h, n, rng)
    counts = np.bincount(sextant(h, xy[:, 0], xy[:, 1]), minlength=6)
    chi2 = float(((counts - n / 6) ** 2 / (n / 6)).sum())
    parts["sextant"] = chi2 < CHI2_5_999

    tiers = cochannel_tiers(30.0)
    parts["nu2/9 integer"] = all(abs(t.nu ** 2 / 9 - round(t.nu ** 2 / 9)) < 1e-9 for t in tiers)
    odd = [(t.norm, t.count) for t in tiers if t.count not in (6, 12)]
    parts["n_j in {6,12}"] = not odd

    elapsed = time.perf_counter() - t0
    detail = f"chi2={chi2:.2f} (<{CHI2_5_999:.3f}); runtime {elapsed:.1f}s; " + \
        ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items())
    if odd:
        detail += "; shells of size " + ", ".join(f"{c} at norm {m} (nu={3 * math.sqrt(m):.2f})" for m, c in odd) + \
            " hold two symmetry orbits"
    ok = acceptance("AC6 geometry property suite", all(parts.values()) and elapsed < 30, detail)
    assert ok, detail


def _simulate(pure=False):
    env = {k: v for k, v in os.environ.items() if k != "HEXDEP_PURE_PYTHON"}
    if pure:
        env["HEXDEP_PURE_PYTHON"] = "1"
    cmd = [sys.executable, "-m", "hexdep", "simulate", "--rate", "12",
           "--samples", "200000", "--seed", "7", "--workers", "1", "--format", "csv"]
    return subprocess.run(cmd, env=env, capture_output=True, check=True).stdout


def test_ac7_determinism(acceptance):
    a, b = _simulate(), _simulate()
    pure = _simulate(pure=True)
    golden = (GOLDEN / "simulate_r12_s7.csv").read_bytes()
    # the generator stream is defined on integers, independent of byte order
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(42, spawn_key=(0, 0))))
    stream = rng.bit_generator.random_raw(4).tolist() == [
        15615703015488024984, 9075810658182898862, 14093605719212935991, 1109484220543997365]
    parts = {"two runs": a == b, "pure vs compiled": a == pure, "golden": a == golden, "rng stream": stream}
    detail = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items()) + f" (byteorder {sys.byteorder})"
    assert acceptance("AC7 simulate byte-identical", all(parts.values()), detail), detail
