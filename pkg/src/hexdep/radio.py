"""Log-distance path loss and the radii derived from it.

All three dependency probabilities depend on the radio parameters only
through ``gamma = 2 * alpha * (P_t / P_min) ** (1 / eta)``, the interference
hexagon radius in units of the cell radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PathLossModel:
    """Received power ``S * 10**(-xi/10) * (d / R0) ** -eta`` (dBm in, dBm out).

    ``shadowing_value`` is a fixed realisation of the shadowing term; it is
    common to every link and cancels out of every ratio used downstream.
    """

    transmit_power_dbm: float
    reference_distance: float
    path_loss_exponent: float
    shadowing_sigma: float = 0.0
    shadowing_value: float = 0.0

    def __post_init__(self) -> None:
        if not self.path_loss_exponent > 0:
            raise ValueError("path loss exponent must be > 0")
        if self.shadowing_sigma < 0:
            raise ValueError("shadowing sigma must be >= 0")
        if not self.reference_distance > 0:
            raise ValueError("reference distance must be > 0")

    def received_dbm(self, distance: float) -> float:
        return (self.transmit_power_dbm - self.shadowing_value
                - 10.0 * self.path_loss_exponent * math.log10(distance / self.reference_distance))

    def distance_for(self, power_dbm: float) -> float:
        """Distance at which the received power drops to ``power_dbm``."""
        excess = self.transmit_power_dbm - self.shadowing_value - power_dbm
        return self.reference_distance * 10.0 ** (excess / (10.0 * self.path_loss_exponent))


@dataclass(frozen=True)
class RadioParams:
    pt_dbm: float
    pmin_dbm: float
    alpha: float = 1.0
    eta: float = 3.5

    def __post_init__(self) -> None:
        if not self.alpha >= 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if not self.eta > 0:
            raise ValueError(f"eta must be > 0, got {self.eta}")
        if not (math.isfinite(self.pt_dbm) and math.isfinite(self.pmin_dbm)):
            raise ValueError("sensitivities must be finite")
        if self.pt_dbm < self.pmin_dbm:
            raise ValueError(
                f"pt_dbm ({self.pt_dbm}) must be >= pmin_dbm ({self.pmin_dbm})")


@dataclass(frozen=True)
class RateRow:
    rate_mbps: float
    sensitivity_dbm: float


@dataclass(frozen=True)
class RateTable:
    """PHY rates with their receiver sensitivities, fastest first."""

    rows: tuple[RateRow, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("rate table is empty")
        rates = [r.rate_mbps for r in self.rows]
        if len(set(rates)) != len(rates):
            raise ValueError("rate table has duplicate rates")
        for a, b in zip(self.rows, self.rows[1:]):
            if not a.rate_mbps > b.rate_mbps:
                raise ValueError("rate table must be strictly decreasing in rate")
            if a.sensitivity_dbm < b.sensitivity_dbm:
                raise ValueError(
                    "sensitivity must not increase going to lower rates "
                    f"({a.rate_mbps} Mbps: {a.sensitivity_dbm} dBm, "
                    f"{b.rate_mbps} Mbps: {b.sensitivity_dbm} dBm)")

    @classmethod
    def from_pairs(cls, pairs) -> RateTable:
        rows = sorted((RateRow(float(r), float(s)) for r, s in pairs),
                      key=lambda row: -row.rate_mbps)
        return cls(tuple(rows))

    @property
    def min_rate_row(self) -> RateRow:
        return self.rows[-1]

    def lookup(self, rate_mbps: float) -> RateRow:
        for row in self.rows:
            if row.rate_mbps == rate_mbps:
                return row
        available = ", ".join(f"{r.rate_mbps:g}" for r in self.rows)
        raise KeyError(f"unknown rate {rate_mbps:g} Mbps; available: {available}")


def power_ratio(pt_dbm: float, pmin_dbm: float) -> float:
    """Linear ratio ``P_t / P_min`` of two powers given in dBm."""
    return 10.0 ** ((pt_dbm - pmin_dbm) / 10.0)


def gamma(rp: RadioParams) -> float:
    """Interference reach ``2 alpha (P_t/P_min)^(1/eta)``; at least ``2 alpha``."""
    return 2.0 * rp.alpha * power_ratio(rp.pt_dbm, rp.pmin_dbm) ** (1.0 / rp.eta)


def gamma_from_model(model: PathLossModel, pt_dbm: float, pmin_dbm: float, alpha: float = 1.0) -> float:
    """``gamma`` via the two distances of a path loss model.

    Equal to :func:`gamma` for any shadowing value, since only the ratio of
    the two distances enters.
    """
    return 2.0 * alpha * model.distance_for(pmin_dbm) / model.distance_for(pt_dbm)


def r_min(r_t: float, rp: RadioParams) -> float:
    if not r_t > 0:
        raise ValueError("cell radius must be > 0")
    return r_t * power_ratio(rp.pt_dbm, rp.pmin_dbm) ** (1.0 / rp.eta)


def interference_radius(r_t: float, rp: RadioParams) -> float:
    """Centre-to-vertex radius of the interference hexagon, ``gamma * R_t``."""
    if not r_t > 0:
        raise ValueError("cell radius must be > 0")
    return gamma(rp) * r_t
