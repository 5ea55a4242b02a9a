"""Scheme selection in the low-SNR regime and the cost of secrecy."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from .channel import AnyConfig
from .low_snr import (
    Regime, eb_n0_min, product_constant, require_positive_margin, slope_region_boundary,
)
from .rates import Scheme

DEFAULT_TIE_TOLERANCE = 1e-12


class Verdict(str, enum.Enum):
    TDMA_OPTIMAL = "tdma_optimal"
    MULTIPLEXED_OPTIMAL = "multiplexed_optimal"
    TIE_PREFER_TDMA = "tie_prefer_tdma"


@dataclass(frozen=True)
class SchemeVerdict:
    phi: float
    phi0: float
    verdict_secrecy: Verdict
    verdict_no_secrecy: Verdict
    divergent: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["verdict_secrecy"] = self.verdict_secrecy.value
        d["verdict_no_secrecy"] = self.verdict_no_secrecy.value
        return d


@dataclass(frozen=True)
class PenaltyReport:
    delta_eb_1: float
    delta_eb_2: float
    slope_shrink_tdma: float
    slope_shrink_mux: float

    def as_dict(self) -> dict:
        return asdict(self)


def phi_thresholds(cfg: AnyConfig) -> tuple:
    """``(phi, phi0)``: selection thresholds with and without secrecy.

    Below one multiplexed transmission has the larger slope region, above
    one TDMA does. ``phi > phi0`` for every config with positive margins.
    """
    vcfg = require_positive_margin(cfg)
    return product_constant(vcfg, Regime.SECRECY), product_constant(vcfg, Regime.NO_SECRECY)


def classify(value: float, tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> Verdict:
    if abs(value - 1.0) <= tie_tolerance:
        return Verdict.TIE_PREFER_TDMA
    return Verdict.TDMA_OPTIMAL if value > 1.0 else Verdict.MULTIPLEXED_OPTIMAL


def divergence_window(cfg: AnyConfig) -> bool:
    """True when TDMA wins under secrecy but multiplexing wins without it.

    Evaluated directly from the gain-ratio double inequality, not from
    ``phi``; :func:`select_scheme` results are cross-checked against it.
    """
    vcfg = require_positive_margin(cfg)
    x1 = vcfg.g11 / vcfg.g21
    x2 = vcfg.g22 / vcfg.g12
    return (x1 - 1.0 / x1) * (x2 - 1.0 / x2) < 4.0 < x1 * x2


def select_scheme(cfg: AnyConfig, tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> SchemeVerdict:
    if tie_tolerance < 0:
        raise ValueError("tie_tolerance must be >= 0")
    phi, phi0 = phi_thresholds(cfg)
    return SchemeVerdict(
        phi=phi,
        phi0=phi0,
        verdict_secrecy=classify(phi, tie_tolerance),
        verdict_no_secrecy=classify(phi0, tie_tolerance),
        divergent=divergence_window(cfg),
    )


def secrecy_penalty(cfg: AnyConfig, grid_resolution: int = 1001) -> PenaltyReport:
    """Energy-per-bit increase (dB) and slope-region area ratios due to secrecy."""
    vcfg = require_positive_margin(cfg)
    sec = eb_n0_min(vcfg, Regime.SECRECY)
    plain = eb_n0_min(vcfg, Regime.NO_SECRECY)
    ratios = []
    for scheme in (Scheme.TDMA, Scheme.MULTIPLEXED):
        inner = slope_region_boundary(vcfg, scheme, Regime.SECRECY, grid_resolution)
        outer = slope_region_boundary(vcfg, scheme, Regime.NO_SECRECY, grid_resolution)
        ratios.append(inner.area() / outer.area())
    return PenaltyReport(
        delta_eb_1=float(10.0 * np.log10(sec[0] / plain[0])),
        delta_eb_2=float(10.0 * np.log10(sec[1] / plain[1])),
        slope_shrink_tdma=ratios[0],
        slope_shrink_mux=ratios[1],
    )
