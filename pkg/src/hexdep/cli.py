"""Command line entry point: ``hexdep <subcommand> [options]``.

Exit status: 0 success, 2 usage error, 3 unreadable/malformed config,
4 config violating a model constraint, 5 failure during a run.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import closedform, oracle, radio
from .lattice import TierTable, cochannel_tiers
from .oracle import McConfig
from .report import (
    FORMATS,
    ConfigParseError,
    ConfigValidationError,
    Table,
    build_report,
    default_config,
    load_config,
    render_report,
    render_table,
)

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_RUNTIME = 5


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="JSON run configuration (default: bundled 802.11g table)")
    p.add_argument("--format", choices=FORMATS, help="output format (default from config)")
    p.add_argument("--seed", type=int, help="Monte Carlo seed")
    p.add_argument("--samples", type=int, help="Monte Carlo pair draws")
    p.add_argument("--workers", type=int, help="Monte Carlo worker threads")
    p.add_argument("--grid-n", type=int, help="quadrature grid points per axis")
    p.add_argument("--out", type=Path, help="also write the output to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="hexdep",
        description="Station dependency probabilities in a 3-channel hexagonal WLAN.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gamma", parents=[common], help="interference reach per rate")

    p = sub.add_parser("tiers", parents=[common], help="co-channel tiers (j, nu_j, n_j)")
    p.add_argument("--nu-max", type=float, help="enumerate tiers with nu < NU_MAX "
                   "(default: largest gamma + 2 in the config)")

    p = sub.add_parser("closed-form", parents=[common], help="per-tier closed forms and aggregates")
    p.add_argument("--rate", type=float, help="only this rate (Mbps)")

    p = sub.add_parser("quadrature", parents=[common], help="type I quadrature per tier")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--tier", type=int, help="only this tier index")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo aggregates")
    p.add_argument("--rate", type=float, help="only this rate (Mbps)")

    sub.add_parser("table", parents=[common], help="full comparison table with discrepancies")
    return parser


def _config(args):
    cfg = default_config() if args.config is None else load_config(args.config)
    mc = cfg.mc
    try:
        mc = McConfig(
            samples=mc.samples if args.samples is None else args.samples,
            seed=mc.seed if args.seed is None else args.seed,
            workers=mc.workers if args.workers is None else args.workers,
        )
    except ValueError as exc:
        raise ConfigValidationError(str(exc)) from None
    changes = {"mc": mc}
    if args.grid_n is not None:
        changes["grid_n"] = args.grid_n
    if args.format is not None:
        changes["output_format"] = args.format
    return cfg.replace(**changes)


def _rates(cfg, rate):
    if rate is None:
        return [r.rate_mbps for r in cfg.rates.rows]
    cfg.rates.lookup(rate)
    return [rate]


def cmd_gamma(cfg, args) -> str:
    rows = []
    for r in cfg.rates.rows:
        rp = cfg.radio_params(r.rate_mbps)
        g = radio.gamma(rp)
        table = TierTable.for_gamma(g)
        active = table.active(g)
        rows.append({
            "rate_mbps": r.rate_mbps, "pt_dbm": r.sensitivity_dbm, "pmin_dbm": cfg.pmin_dbm,
            "gamma": g, "r_min": radio.r_min(1.0, rp), "j0": len(active),
            "total_cells": sum(t.count for t in active),
        })
    cols = [("rate_mbps", "str"), ("pt_dbm", "str"), ("pmin_dbm", "str"), ("gamma", "num"),
            ("r_min", "num"), ("j0", "int"), ("total_cells", "int")]
    return render_table(Table(cols, rows), cfg.output_format)


def cmd_tiers(cfg, args) -> str:
    nu_max = args.nu_max
    if nu_max is None:
        nu_max = max(cfg.gamma(r.rate_mbps) for r in cfg.rates.rows) + 2.0
    rows = [{"j": t.index, "norm": t.norm, "nu": t.nu, "count": t.count,
             "rep_x": t.representative.x, "rep_y": t.representative.y}
            for t in cochannel_tiers(nu_max)]
    cols = [("j", "int"), ("norm", "int"), ("nu", "num"), ("count", "int"),
            ("rep_x", "num"), ("rep_y", "num")]
    return render_table(Table(cols, rows), cfg.output_format)


def cmd_closed_form(cfg, args) -> str:
    rows = []
    for rate in _rates(cfg, args.rate):
        g = cfg.gamma(rate)
        table = TierTable.for_gamma(g)
        for t in table.active(g):
            tp = closedform.tier_probability(t, g)
            rows.append({"rate_mbps": rate, "gamma": g, "tier": str(t.index), "nu": t.nu,
                         "count": t.count, "p1": tp.p1, "p2": tp.p2, "p3": tp.p3,
                         "cases": "/".join(str(c.case_index) for c in tp.cases)})
        agg = closedform.aggregate(table, g)
        rows.append({"rate_mbps": rate, "gamma": g, "tier": "all", "nu": None,
                     "count": agg.total_cells, "p1": agg.p1, "p2": agg.p2, "p3": agg.p3,
                     "cases": ""})
    cols = [("rate_mbps", "str"), ("gamma", "num"), ("tier", "str"), ("nu", "num"),
            ("count", "int"), ("p1", "prob"), ("p2", "prob"), ("p3", "prob"), ("cases", "str")]
    return render_table(Table(cols, rows), cfg.output_format)


def cmd_quadrature(cfg, args) -> str:
    g = cfg.gamma(args.rate)
    table = TierTable.for_gamma(g)
    active = table.active(g)
    if args.tier is not None:
        if not 1 <= args.tier <= len(active):
            raise ValueError(f"tier {args.tier} is not active at {args.rate:g} Mbps "
                             f"(j0 = {len(active)})")
        active = (active[args.tier - 1],)
    rows = []
    for t in active:
        q = oracle.quadrature_p1(oracle.make_scenario(g, t), cfg.grid_n)
        cf = closedform.p1_j(g, t.nu)
        rows.append({"rate_mbps": args.rate, "gamma": g, "tier": str(t.index), "nu": t.nu,
                     "count": t.count, "closed_p1": cf, "quad_p1": q, "deviation": abs(cf - q)})
    if args.tier is None and rows:
        cf, n = closedform.weighted_mean((r["closed_p1"], r["count"]) for r in rows)
        q, _ = closedform.weighted_mean((r["quad_p1"], r["count"]) for r in rows)
        rows.append({"rate_mbps": args.rate, "gamma": g, "tier": "all", "nu": None, "count": n,
                     "closed_p1": cf, "quad_p1": q, "deviation": abs(cf - q)})
    cols = [("rate_mbps", "str"), ("gamma", "num"), ("tier", "str"), ("nu", "num"),
            ("count", "int"), ("closed_p1", "prob"), ("quad_p1", "prob"), ("deviation", "prob")]
    return render_table(Table(cols, rows), cfg.output_format)


def cmd_simulate(cfg, args) -> str:
    rows = []
    for rate in _rates(cfg, args.rate):
        g = cfg.gamma(rate)
        est = oracle.mc_aggregate_all(TierTable.for_gamma(g), g, cfg.mc)
        row = {"rate_mbps": rate, "gamma": g, "samples": cfg.mc.samples,
               "seed": cfg.mc.seed, "workers": cfg.mc.workers}
        for t in (1, 2, 3):
            row[f"mc_p{t}"] = est[t].estimate
            row[f"mc_p{t}_se"] = est[t].stderr
        rows.append(row)
    cols = [("rate_mbps", "str"), ("gamma", "num"), ("samples", "int"), ("seed", "int"),
            ("workers", "int"), ("mc_p1", "prob"), ("mc_p1_se", "prob"), ("mc_p2", "prob"),
            ("mc_p2_se", "prob"), ("mc_p3", "prob"), ("mc_p3_se", "prob")]
    return render_table(Table(cols, rows), cfg.output_format)


def cmd_table(cfg, args) -> str:
    return render_report(build_report(cfg), cfg.output_format)


COMMANDS = {
    "gamma": cmd_gamma,
    "tiers": cmd_tiers,
    "closed-form": cmd_closed_form,
    "quadrature": cmd_quadrature,
    "simulate": cmd_simulate,
    "table": cmd_table,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
    except ConfigParseError as exc:
        print(f"hexdep: config error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigValidationError as exc:
        print(f"hexdep: invalid config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        text = COMMANDS[args.command](cfg, args)
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"hexdep: {msg}", file=sys.stderr)
        return EXIT_RUNTIME
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
