"""Plot-ready datasets for the five reference figures.

Each figure maps to a set of CSV files; nothing is rendered here.
"""

from __future__ import annotations

from pathlib import Path

from .channel import ChannelConfig, RateUnits
from .errors import ParamOutOfRange
from .low_snr import SLOPE_CSV_HEADER, Regime, slope_region_boundary
from .rates import REGION_CSV_HEADER, Scheme, achievable_region
from .report import csv_text

FIG1_CONFIG = ChannelConfig(1.0, 0.04, 0.04, 1.0, sigma2=1.0, p1=0.1, p2=0.1)
# cross-gain pairs (g12, g21) for the TDMA and multiplexed sweep figures
SWEEP_PAIRS = ((0.01, 0.01), (0.04, 0.04), (0.16, 0.16), (0.36, 0.36))
FIG4_CONFIG = ChannelConfig(1.0, 0.4, 0.5, 1.0)
FIG5_CONFIG = ChannelConfig(1.0, 0.1, 0.2, 1.0)


def figure_datasets(n: int, grid_resolution: int = 101, units=RateUnits.NATS) -> dict:
    """``{filename: csv text}`` for figure ``n`` (1..5)."""
    if n == 1:
        out = {}
        for scheme in Scheme:
            region = achievable_region(FIG1_CONFIG, scheme, grid_resolution)
            out[f"fig1_region_{scheme.value}.csv"] = csv_text(REGION_CSV_HEADER, region.csv_rows(units))
        return out
    if n in (2, 3):
        scheme = Scheme.TDMA if n == 2 else Scheme.MULTIPLEXED
        out = {}
        for g12, g21 in SWEEP_PAIRS:
            cfg = ChannelConfig(1.0, g12, g21, 1.0)
            boundary = slope_region_boundary(cfg, scheme, Regime.SECRECY, grid_resolution)
            name = f"fig{n}_slopes_{scheme.value}_g12_{g12:g}_g21_{g21:g}.csv"
            out[name] = csv_text(SLOPE_CSV_HEADER, boundary.csv_rows())
        return out
    if n in (4, 5):
        cfg = FIG4_CONFIG if n == 4 else FIG5_CONFIG
        out = {}
        for regime in Regime:
            for scheme in (Scheme.TDMA, Scheme.MULTIPLEXED):
                boundary = slope_region_boundary(cfg, scheme, regime, grid_resolution)
                out[f"fig{n}_slopes_{regime.value}_{scheme.value}.csv"] = csv_text(
                    SLOPE_CSV_HEADER, boundary.csv_rows())
        return out
    raise ParamOutOfRange(f"figure must be 1..5, got {n!r}")


def reproduce_fig(n: int, output_dir, grid_resolution: int = 101, units=RateUnits.NATS) -> list:
    datasets = figure_datasets(n, grid_resolution, units)
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in datasets.items():
        path = output_dir / name
        path.write_text(text, encoding="utf-8", newline="\n")
        paths.append(path)
    return paths
