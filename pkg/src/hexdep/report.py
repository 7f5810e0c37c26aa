"""Run configuration, the dependency report, and its renderings."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

from . import closedform, oracle, radio
from .lattice import TierTable
from .oracle import McConfig
from .radio import RadioParams, RateTable

FORMATS = ("csv", "json", "markdown")
MIN_RATE_RULE = "minimum-rate-row"


class ConfigParseError(ValueError):
    """The configuration file is not well-formed JSON."""


class ConfigValidationError(ValueError):
    """The configuration parsed but violates a model constraint."""


@dataclass(frozen=True)
class Reference:
    """Externally published probabilities for one rate, for comparison."""

    p1: float
    p2: float
    p3: float


@dataclass(frozen=True)
class RunConfig:
    rates: RateTable
    alpha: float = 1.0
    eta: float = 3.5
    pmin: float | str = MIN_RATE_RULE
    mc: McConfig = field(default_factory=McConfig)
    grid_n: int = 512
    output_format: str = "markdown"
    reference: dict[float, Reference] = field(default_factory=dict)

    @property
    def pmin_dbm(self) -> float:
        if self.pmin == MIN_RATE_RULE:
            return self.rates.min_rate_row.sensitivity_dbm
        return float(self.pmin)

    def radio_params(self, rate_mbps: float) -> RadioParams:
        row = self.rates.lookup(rate_mbps)
        return RadioParams(row.sensitivity_dbm, self.pmin_dbm, self.alpha, self.eta)

    def gamma(self, rate_mbps: float) -> float:
        return radio.gamma(self.radio_params(rate_mbps))

    def replace(self, **changes) -> RunConfig:
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        out = RunConfig(**values)
        validate(out)
        return out


_TOP_KEYS = {"rates", "alpha", "eta", "pmin", "monte_carlo", "quadrature", "format", "reference"}


def _require_number(obj, name):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise ConfigValidationError(f"{name} must be a finite number, got {obj!r}")
    return obj


def _require_int(obj, name):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ConfigValidationError(f"{name} must be an integer, got {obj!r}")
    return obj


def _parse_rates(raw) -> RateTable:
    if not isinstance(raw, list):
        raise ConfigValidationError("rates must be a list of [rate_mbps, sensitivity_dbm] pairs")
    pairs = []
    for i, item in enumerate(raw):
        if isinstance(item, dict):
            try:
                pair = (item["rate_mbps"], item["sensitivity_dbm"])
            except KeyError as exc:
                raise ConfigValidationError(f"rates[{i}] is missing {exc.args[0]}") from None
        elif isinstance(item, list) and len(item) == 2:
            pair = tuple(item)
        else:
            raise ConfigValidationError(f"rates[{i}] must be a pair or an object, got {item!r}")
        pairs.append((_require_number(pair[0], f"rates[{i}].rate_mbps"),
                      _require_number(pair[1], f"rates[{i}].sensitivity_dbm")))
    if not pairs:
        raise ConfigValidationError("rates: rate table is empty")
    try:
        return RateTable.from_pairs(pairs)
    except ValueError as exc:
        raise ConfigValidationError(f"rates: {exc}") from None


def config_from_dict(doc) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigValidationError("configuration must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigValidationError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    if "rates" not in doc:
        raise ConfigValidationError("rates: required")
    rates = _parse_rates(doc["rates"])

    mc_doc = doc.get("monte_carlo", {})
    if not isinstance(mc_doc, dict) or set(mc_doc) - {"samples", "seed", "workers"}:
        raise ConfigValidationError("monte_carlo accepts only samples, seed, workers")
    try:
        mc = McConfig(
            samples=_require_int(mc_doc.get("samples", 1_000_000), "monte_carlo.samples"),
            seed=_require_int(mc_doc.get("seed", 42), "monte_carlo.seed"),
            workers=_require_int(mc_doc.get("workers", 1), "monte_carlo.workers"),
        )
    except ValueError as exc:
        raise ConfigValidationError(f"monte_carlo: {exc}") from None

    quad_doc = doc.get("quadrature", {})
    if not isinstance(quad_doc, dict) or set(quad_doc) - {"grid_n"}:
        raise ConfigValidationError("quadrature accepts only grid_n")

    pmin = doc.get("pmin", MIN_RATE_RULE)
    if pmin != MIN_RATE_RULE:
        pmin = float(_require_number(pmin, "pmin"))

    reference = {}
    for i, item in enumerate(doc.get("reference", [])):
        try:
            rate = float(_require_number(item["rate_mbps"], f"reference[{i}].rate_mbps"))
            reference[rate] = Reference(*(float(_require_number(item[k], f"reference[{i}].{k}"))
                                          for k in ("p1", "p2", "p3")))
        except (KeyError, TypeError) as exc:
            raise ConfigValidationError(f"reference[{i}] must have rate_mbps, p1, p2, p3 ({exc})") from None

    cfg = RunConfig(
        rates=rates,
        alpha=float(_require_number(doc.get("alpha", 1.0), "alpha")),
        eta=float(_require_number(doc.get("eta", 3.5), "eta")),
        pmin=pmin,
        mc=mc,
        grid_n=_require_int(quad_doc.get("grid_n", 512), "quadrature.grid_n"),
        output_format=doc.get("format", "markdown"),
        reference=reference,
    )
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    """Check every constraint a run relies on, naming the one violated."""
    if not cfg.alpha >= 1:
        raise ConfigValidationError(f"alpha must be >= 1, got {cfg.alpha:g}")
    if not cfg.eta > 0:
        raise ConfigValidationError(f"eta must be > 0, got {cfg.eta:g}")
    if cfg.grid_n < 16:
        raise ConfigValidationError(f"quadrature.grid_n must be >= 16, got {cfg.grid_n}")
    if cfg.output_format not in FORMATS:
        raise ConfigValidationError(
            f"format must be one of {', '.join(FORMATS)}, got {cfg.output_format!r}")
    pmin = cfg.pmin_dbm
    for row in cfg.rates.rows:
        if row.sensitivity_dbm < pmin:
            raise ConfigValidationError(
                f"sensitivity of {row.rate_mbps:g} Mbps ({row.sensitivity_dbm:g} dBm) "
                f"is below pmin ({pmin:g} dBm)")
    for rate in cfg.reference:
        if rate not in {r.rate_mbps for r in cfg.rates.rows}:
            raise ConfigValidationError(f"reference rate {rate:g} is not in the rate table")


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return config_from_dict(doc)


def load_config(path) -> RunConfig:
    """Read and validate a JSON run configuration.

    Raises:
        ConfigParseError: unreadable file or malformed JSON (with line and column).
        ConfigValidationError: well-formed but violating a constraint.
    """
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"{p}: {exc.strerror}") from None
    return parse_config(text, str(p))


def default_config() -> RunConfig:
    """The bundled six-rate 802.11g table with its published reference values."""
    text = resources.files("hexdep").joinpath("data/rates_80211g.json").read_text(encoding="utf-8")
    return parse_config(text, "rates_80211g.json")


# --- report ---------------------------------------------------------------


@dataclass(frozen=True)
class TierReport:
    j: int
    nu: float
    count: int
    p1: float
    p2: float
    p3: float
    quad_p1: float
    mc_samples: int
    mc_p1: float
    mc_p1_se: float
    mc_p2: float
    mc_p2_se: float
    mc_p3: float
    mc_p3_se: float


@dataclass(frozen=True)
class RateReport:
    rate_mbps: float
    pt_dbm: float
    gamma: float
    j0: int
    total_cells: int
    p1: float
    p2: float
    p3: float
    quad_p1: float
    mc_p1: float
    mc_p1_se: float
    mc_p2: float
    mc_p2_se: float
    mc_p3: float
    mc_p3_se: float
    ref_p1: float | None = None
    ref_p2: float | None = None
    ref_p3: float | None = None
    tiers: tuple[TierReport, ...] = ()

    def deviations(self) -> dict[str, float | None]:
        """Absolute gaps between the closed forms and every other source."""
        def gap(a, b):
            return None if b is None else abs(a - b)
        return {
            "dev_ref_p1": gap(self.p1, self.ref_p1),
            "dev_ref_p2": gap(self.p2, self.ref_p2),
            "dev_ref_p3": gap(self.p3, self.ref_p3),
            "dev_quad_p1": gap(self.p1, self.quad_p1),
            "dev_mc_p1": gap(self.p1, self.mc_p1),
            "dev_mc_p2": gap(self.p2, self.mc_p2),
            "dev_mc_p3": gap(self.p3, self.mc_p3),
        }


@dataclass(frozen=True)
class DependencyReport:
    alpha: float
    eta: float
    pmin_dbm: float
    samples: int
    seed: int
    workers: int
    grid_n: int
    rows: tuple[RateReport, ...]

    def to_dict(self) -> dict:
        doc = asdict(self)
        for row, row_doc in zip(self.rows, doc["rows"]):
            row_doc["deviations"] = row.deviations()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> DependencyReport:
        rows = []
        for row_doc in doc["rows"]:
            row_doc = {k: v for k, v in row_doc.items() if k != "deviations"}
            tiers = tuple(TierReport(**t) for t in row_doc.pop("tiers"))
            rows.append(RateReport(**row_doc, tiers=tiers))
        top = {k: v for k, v in doc.items() if k != "rows"}
        return cls(**top, rows=tuple(rows))


def rate_report(cfg: RunConfig, rate_mbps: float) -> RateReport:
    """Closed form, quadrature and Monte Carlo for one rate, per tier and aggregated."""
    row = cfg.rates.lookup(rate_mbps)
    g = cfg.gamma(rate_mbps)
    table = TierTable.for_gamma(g)
    agg = closedform.aggregate(table, g)
    strata = oracle.mc_strata(table, g, cfg.mc)
    mc = oracle.combine_strata(strata)
    tiers = []
    for t in table.active(g):
        cf = closedform.tier_probability(t, g)
        est = oracle.tier_estimates(strata, t.index)
        tiers.append(TierReport(
            j=t.index, nu=t.nu, count=t.count,
            p1=cf.p1, p2=cf.p2, p3=cf.p3,
            quad_p1=oracle.quadrature_tier_p1(g, t, cfg.grid_n),
            mc_samples=est[1].samples,
            mc_p1=est[1].estimate, mc_p1_se=est[1].stderr,
            mc_p2=est[2].estimate, mc_p2_se=est[2].stderr,
            mc_p3=est[3].estimate, mc_p3_se=est[3].stderr,
        ))
    quad, _ = closedform.weighted_mean((t.quad_p1, t.count) for t in tiers)
    ref = cfg.reference.get(row.rate_mbps)
    return RateReport(
        rate_mbps=row.rate_mbps, pt_dbm=row.sensitivity_dbm, gamma=g,
        j0=agg.j0, total_cells=agg.total_cells,
        p1=agg.p1, p2=agg.p2, p3=agg.p3,
        quad_p1=quad,
        mc_p1=mc[1].estimate, mc_p1_se=mc[1].stderr,
        mc_p2=mc[2].estimate, mc_p2_se=mc[2].stderr,
        mc_p3=mc[3].estimate, mc_p3_se=mc[3].stderr,
        ref_p1=None if ref is None else ref.p1,
        ref_p2=None if ref is None else ref.p2,
        ref_p3=None if ref is None else ref.p3,
        tiers=tuple(tiers),
    )


def build_report(cfg: RunConfig, rates=None) -> DependencyReport:
    selected = [r.rate_mbps for r in cfg.rates.rows] if rates is None else list(rates)
    return DependencyReport(
        alpha=cfg.alpha, eta=cfg.eta, pmin_dbm=cfg.pmin_dbm,
        samples=cfg.mc.samples, seed=cfg.mc.seed, workers=cfg.mc.workers,
        grid_n=cfg.grid_n,
        rows=tuple(rate_report(cfg, r) for r in selected),
    )


# --- rendering ------------------------------------------------------------


@dataclass
class Table:
    """Rows of plain values plus the column order and per-column format."""

    columns: list[tuple[str, str]]  # (name, kind) with kind in int/num/prob/str
    rows: list[dict]
    title: str = ""


def _md_cell(value, kind: str) -> str:
    if value is None:
        return "-"
    if kind == "prob":
        return f"{value:.4f}"
    if kind == "num":
        return f"{value:.4f}"
    if kind == "int":
        return str(int(value))
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_markdown(tables: list[Table]) -> str:
    parts = []
    for t in tables:
        lines = []
        if t.title:
            lines += [f"### {t.title}", ""]
        names = [name for name, _ in t.columns]
        lines.append("| " + " | ".join(names) + " |")
        lines.append("|" + "|".join("---:" for _ in names) + "|")
        for row in t.rows:
            lines.append("| " + " | ".join(_md_cell(row[n], k) for n, k in t.columns) + " |")
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + "\n"


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([name for name, _ in table.columns])
    for row in table.rows:
        w.writerow([_csv_cell(row[name]) for name, _ in table.columns])
    return buf.getvalue()


def render_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


_ROW_COLUMNS = [
    ("rate_mbps", "str"), ("pt_dbm", "str"), ("gamma", "num"), ("j0", "int"),
    ("total_cells", "int"), ("p1", "prob"), ("p2", "prob"), ("p3", "prob"),
    ("quad_p1", "prob"), ("mc_p1", "prob"), ("mc_p1_se", "prob"),
    ("mc_p2", "prob"), ("mc_p2_se", "prob"), ("mc_p3", "prob"), ("mc_p3_se", "prob"),
]
_REF_COLUMNS = [("ref_p1", "prob"), ("ref_p2", "prob"), ("ref_p3", "prob")]
_DEV_COLUMNS = [(name, "prob") for name in (
    "dev_ref_p1", "dev_ref_p2", "dev_ref_p3", "dev_quad_p1", "dev_mc_p1", "dev_mc_p2", "dev_mc_p3")]


def report_rows(report: DependencyReport) -> list[dict]:
    out = []
    for r in report.rows:
        d = {name: getattr(r, name) for name, _ in _ROW_COLUMNS + _REF_COLUMNS}
        d.update(r.deviations())
        out.append(d)
    return out


def render_report(report: DependencyReport, fmt: str) -> str:
    """Render a report; the deviation columns are part of every format."""
    if fmt == "json":
        return render_json(report.to_dict())
    rows = report_rows(report)
    if fmt == "csv":
        return render_csv(Table(_ROW_COLUMNS + _REF_COLUMNS + _DEV_COLUMNS, rows))
    header = (f"alpha={report.alpha:g} eta={report.eta:g} pmin={report.pmin_dbm:g} dBm "
              f"samples={report.samples} seed={report.seed} workers={report.workers} "
              f"grid_n={report.grid_n}\n\n")
    main = Table(_ROW_COLUMNS, rows, "Dependency probabilities")
    disc = Table([("rate_mbps", "str")] + _REF_COLUMNS + [("p1", "prob"), ("p2", "prob"), ("p3", "prob")]
                 + _DEV_COLUMNS, rows, "Discrepancies")
    return header + render_markdown([main, disc])


def render_table(table: Table, fmt: str) -> str:
    if fmt == "json":
        return render_json(table.rows)
    if fmt == "csv":
        return render_csv(table)
    return render_markdown([table])
