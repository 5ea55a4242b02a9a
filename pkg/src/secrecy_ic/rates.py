"""Achievable secrecy rates for TDMA, multiplexed and artificial-noise
transmission, plus grid sweeps into Pareto-frontier region boundaries.

All rates are in nats per channel use. The ``*_kernel`` functions evaluate
the raw closed forms on numpy arrays with no clamping and no range checks;
the public functions validate their inputs and clamp at zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .channel import AnyConfig, RateUnits, convert_rate, validate_config
from .errors import ParamOutOfRange


class Scheme(str, enum.Enum):
    TDMA = "tdma"
    MULTIPLEXED = "multiplexed"
    ARTIFICIAL_NOISE = "artificial_noise"

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, cls):
            return value
        aliases = {"mux": cls.MULTIPLEXED, "an": cls.ARTIFICIAL_NOISE}
        key = str(value).lower()
        return aliases[key] if key in aliases else cls(key)


class NoiseRole(str, enum.Enum):
    FROM_TX2 = "noise_from_tx2"
    FROM_TX1 = "noise_from_tx1"


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float
    clamped1: bool = False
    clamped2: bool = False


def _clamped(r1, r2) -> RatePair:
    r1, r2 = float(r1), float(r2)
    return RatePair(max(r1, 0.0), max(r2, 0.0), r1 < 0.0, r2 < 0.0)


# -- raw closed forms ---------------------------------------------------------

def tdma_user_kernel(g_direct, g_cross, snr, share):
    """``share * [ln(1 + g_direct snr/share) - ln(1 + g_cross snr/share)]``.

    Zero where ``share == 0`` (continuity limit of an idle slot).
    """
    snr = np.asarray(snr, dtype=float)
    share = np.asarray(share, dtype=float)
    active = share > 0
    safe = np.where(active, share, 1.0)
    value = safe * (np.log1p(g_direct * snr / safe) - np.log1p(g_cross * snr / safe))
    return np.where(active, value, 0.0)


def multiplexed_kernel(g11, g12, g21, g22, snr1, snr2):
    r1 = np.log1p(g11 * snr1 / (1.0 + g12 * snr2)) - np.log1p(g21 * snr1)
    r2 = np.log1p(g22 * snr2 / (1.0 + g21 * snr1)) - np.log1p(g12 * snr2)
    return r1, r2


def artificial_noise_kernel(g11, g12, g21, g22, snr1, snr2, lam):
    """Transmitter 2 spends a fraction ``lam`` of its power on jamming noise.

    Written so that ``lam == 0`` reproduces :func:`multiplexed_kernel`
    bit for bit.
    """
    noise = g22 * lam * snr2
    r1 = np.log1p(g11 * snr1 / (1.0 + g12 * snr2)) - np.log1p(g21 * snr1 / (1.0 + noise))
    r2 = (np.log1p(g22 * (1.0 - lam) * snr2 / (1.0 + g21 * snr1 + noise))
          - np.log1p(g12 * (1.0 - lam) * snr2 / (1.0 + g12 * lam * snr2)))
    return r1, r2


def _an_kernel_with_role(cfg, snr1, snr2, lam, role):
    if NoiseRole(role) is NoiseRole.FROM_TX2:
        return artificial_noise_kernel(cfg.g11, cfg.g12, cfg.g21, cfg.g22, snr1, snr2, lam)
    r2, r1 = artificial_noise_kernel(cfg.g22, cfg.g21, cfg.g12, cfg.g11, snr2, snr1, lam)
    return r1, r2


# -- checked scalar evaluation ------------------------------------------------

def _check_unit(name, value):
    if not (0.0 <= value <= 1.0):
        raise ParamOutOfRange(f"{name} = {value!r} must lie in [0, 1]")


def _check_snr(vcfg, snr1, snr2):
    if not (0.0 <= snr1 <= vcfg.snr1):
        raise ParamOutOfRange(f"snr1 = {snr1!r} outside [0, {vcfg.snr1!r}]")
    if not (0.0 <= snr2 <= vcfg.snr2):
        raise ParamOutOfRange(f"snr2 = {snr2!r} outside [0, {vcfg.snr2!r}]")


def tdma_rates(cfg: AnyConfig, snr1: float, snr2: float, alpha: float) -> RatePair:
    """TDMA secrecy rates with user 1 active for a fraction ``alpha`` of time.

    ``snr_i`` is the *average* SNR, so the in-slot SNR is ``snr1/alpha``.
    """
    vcfg = validate_config(cfg)
    _check_unit("alpha", alpha)
    _check_snr(vcfg, snr1, snr2)
    r1 = tdma_user_kernel(vcfg.g11, vcfg.g21, snr1, alpha)
    r2 = tdma_user_kernel(vcfg.g22, vcfg.g12, snr2, 1.0 - alpha)
    return _clamped(r1, r2)


def multiplexed_rates(cfg: AnyConfig, snr1: float, snr2: float) -> RatePair:
    vcfg = validate_config(cfg)
    _check_snr(vcfg, snr1, snr2)
    return _clamped(*multiplexed_kernel(vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22, snr1, snr2))


def artificial_noise_rates(cfg: AnyConfig, snr1: float, snr2: float, lam: float,
                           role: Union[NoiseRole, str] = NoiseRole.FROM_TX2) -> RatePair:
    vcfg = validate_config(cfg)
    _check_unit("lambda", lam)
    _check_snr(vcfg, snr1, snr2)
    return _clamped(*_an_kernel_with_role(vcfg, snr1, snr2, lam, role))


# -- region sweeps ------------------------------------------------------------

@dataclass(frozen=True)
class RegionPoint:
    r1: float
    r2: float
    snr1: float
    snr2: float
    alpha: Optional[float] = None
    lam: Optional[float] = None
    role: Optional[NoiseRole] = None


@dataclass(frozen=True)
class RegionBoundary:
    scheme: Scheme
    points: tuple
    grid: Mapping[str, int] = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        """``(n, 2)`` array of ``(r1, r2)``."""
        return np.array([[p.r1, p.r2] for p in self.points], dtype=float).reshape(-1, 2)

    def csv_rows(self, units=RateUnits.NATS):
        for p in self.points:
            yield (
                self.scheme.value, p.snr1, p.snr2, p.alpha, p.lam,
                None if p.role is None else p.role.value,
                convert_rate(p.r1, RateUnits.NATS, units),
                convert_rate(p.r2, RateUnits.NATS, units),
            )


REGION_CSV_HEADER = ("scheme", "snr1", "snr2", "alpha", "lambda", "role", "r1", "r2")


def pareto_mask(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    """Indices of the non-dominated points, ordered by decreasing ``r1``.

    Exact duplicates keep the one appearing first in the input.
    """
    r1 = np.asarray(r1, dtype=float).ravel()
    r2 = np.asarray(r2, dtype=float).ravel()
    if r1.size == 0:
        return np.empty(0, dtype=np.intp)
    order = np.lexsort((np.arange(r1.size), -r2, -r1))
    r2_sorted = r2[order]
    best_before = np.maximum.accumulate(np.concatenate(([-np.inf], r2_sorted[:-1])))
    return order[r2_sorted > best_before]


def pareto_frontier(points: Sequence) -> list:
    """Non-dominated subset of objects exposing ``r1`` and ``r2``.

    >>> [(p.r1, p.r2) for p in pareto_frontier([RatePair(1, 1), RatePair(0.5, 0.5)])]
    [(1, 1)]
    """
    points = list(points)
    keep = pareto_mask([p.r1 for p in points], [p.r2 for p in points])
    return [points[i] for i in keep]


def _resolution(grid_resolution, key):
    if isinstance(grid_resolution, Mapping):
        n = int(grid_resolution.get(key, grid_resolution.get("default", 101)))
    else:
        n = int(grid_resolution)
    if n < 2:
        raise ParamOutOfRange(f"grid resolution for {key} must be >= 2, got {n}")
    return n


def achievable_region(cfg: AnyConfig, scheme, grid_resolution: Union[int, Mapping[str, int]] = 101,
                      lam: Optional[float] = None) -> RegionBoundary:
    """Sweep a scheme's parameters on uniform grids and keep the Pareto frontier.

    Parameters
    ----------
    cfg : ChannelConfig or ValidatedConfig
    scheme : Scheme or str
        ``tdma`` sweeps (alpha, snr1, snr2); ``multiplexed`` sweeps
        (snr1, snr2); ``artificial_noise`` sweeps (snr1, snr2, lambda) for
        both noise roles and takes the union.
    grid_resolution : int or mapping
        Points per swept parameter, either one count for all or a mapping
        with keys ``alpha``, ``snr``, ``lambda``.
    lam : float, optional
        Fix the jamming fraction instead of sweeping it (AN only).

    Returns
    -------
    RegionBoundary
        Frontier points ordered by decreasing ``r1``. Output is fully
        determined by the config and the grid.
    """
    vcfg = validate_config(cfg)
    scheme = Scheme.parse(scheme)
    if lam is not None:
        if scheme is not Scheme.ARTIFICIAL_NOISE:
            raise ParamOutOfRange("lambda applies to the artificial_noise scheme only")
        _check_unit("lambda", lam)
    n_snr = _resolution(grid_resolution, "snr")
    s1 = np.linspace(0.0, vcfg.snr1, n_snr)
    s2 = np.linspace(0.0, vcfg.snr2, n_snr)
    grid = {"snr": n_snr}

    if scheme is Scheme.TDMA:
        n_a = _resolution(grid_resolution, "alpha")
        grid["alpha"] = n_a
        a = np.linspace(0.0, 1.0, n_a)
        A, S1, S2 = np.meshgrid(a, s1, s2, indexing="ij")
        r1 = np.maximum(tdma_user_kernel(vcfg.g11, vcfg.g21, S1, A), 0.0)
        r2 = np.maximum(tdma_user_kernel(vcfg.g22, vcfg.g12, S2, 1.0 - A), 0.0)
        keep = pareto_mask(r1, r2)
        a_f, s1_f, s2_f = A.ravel(), S1.ravel(), S2.ravel()
        r1f, r2f = r1.ravel(), r2.ravel()
        points = tuple(
            RegionPoint(float(r1f[i]), float(r2f[i]), float(s1_f[i]), float(s2_f[i]),
                        alpha=float(a_f[i]))
            for i in keep
        )
    elif scheme is Scheme.MULTIPLEXED:
        S1, S2 = np.meshgrid(s1, s2, indexing="ij")
        r1, r2 = multiplexed_kernel(vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22, S1, S2)
        r1, r2 = np.maximum(r1, 0.0).ravel(), np.maximum(r2, 0.0).ravel()
        keep = pareto_mask(r1, r2)
        s1_f, s2_f = S1.ravel(), S2.ravel()
        points = tuple(
            RegionPoint(float(r1[i]), float(r2[i]), float(s1_f[i]), float(s2_f[i]))
            for i in keep
        )
    else:
        if lam is None:
            n_l = _resolution(grid_resolution, "lambda")
            grid["lambda"] = n_l
            lams = np.linspace(0.0, 1.0, n_l)
        else:
            lams = np.array([float(lam)])
        S1, S2, L = np.meshgrid(s1, s2, lams, indexing="ij")
        r1s, r2s, roles = [], [], []
        for role in (NoiseRole.FROM_TX2, NoiseRole.FROM_TX1):
            r1, r2 = _an_kernel_with_role(vcfg, S1, S2, L, role)
            r1s.append(np.maximum(r1, 0.0).ravel())
            r2s.append(np.maximum(r2, 0.0).ravel())
            roles.append(role)
        r1, r2 = np.concatenate(r1s), np.concatenate(r2s)
        keep = pareto_mask(r1, r2)
        size = S1.size
        s1_f, s2_f, l_f = S1.ravel(), S2.ravel(), L.ravel()
        points = tuple(
            RegionPoint(float(r1[i]), float(r2[i]), float(s1_f[i % size]), float(s2_f[i % size]),
                        lam=float(l_f[i % size]), role=roles[i // size])
            for i in keep
        )
    return RegionBoundary(scheme, points, grid)


def _point_to_polyline(points: np.ndarray, line: np.ndarray) -> np.ndarray:
    if len(line) == 1:
        return np.linalg.norm(points - line[0], axis=1)
    a, b = line[:-1], line[1:]
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    denom = np.where(denom > 0, denom, 1.0)
    out = np.empty(len(points))
    for start in range(0, len(points), 512):
        p = points[start:start + 512, None, :]
        t = np.clip(np.einsum("kij,ij->ki", p - a, ab) / denom, 0.0, 1.0)
        nearest = a + t[..., None] * ab
        out[start:start + 512] = np.linalg.norm(p - nearest, axis=2).min(axis=1)
    return out


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two frontiers read as polylines.

    ``a`` and ``b`` are :class:`RegionBoundary` objects or ``(n, 2)`` arrays
    ordered along the curve.
    """
    a = a.as_array() if isinstance(a, RegionBoundary) else np.asarray(a, dtype=float)
    b = b.as_array() if isinstance(b, RegionBoundary) else np.asarray(b, dtype=float)
    return float(max(_point_to_polyline(a, b).max(), _point_to_polyline(b, a).max()))


# -- asymptotics --------------------------------------------------------------

@dataclass(frozen=True)
class FirstOrderCoefficients:
    """Low-SNR slopes ``(a1, a2)``: ``r_i = a_i snr_i + o(snr_i)``."""

    a1: float
    a2: float


def first_order_region(cfg: AnyConfig, scheme, lam: Optional[float] = None,
                       role=NoiseRole.FROM_TX2) -> FirstOrderCoefficients:
    vcfg = validate_config(cfg)
    scheme = Scheme.parse(scheme)
    m1, m2 = vcfg.margin.m1, vcfg.margin.m2
    if scheme is Scheme.ARTIFICIAL_NOISE:
        if lam is None:
            raise ParamOutOfRange("artificial_noise needs lambda")
        _check_unit("lambda", lam)
        if NoiseRole(role) is NoiseRole.FROM_TX2:
            return FirstOrderCoefficients(m1, (1.0 - lam) * m2)
        return FirstOrderCoefficients((1.0 - lam) * m1, m2)
    if lam is not None:
        raise ParamOutOfRange(f"lambda does not apply to {scheme.value}")
    return FirstOrderCoefficients(m1, m2)


@dataclass(frozen=True)
class HighSnrQuery:
    q: float = 1.0
    alpha: Optional[float] = None
    lam: Optional[float] = None
    role: NoiseRole = NoiseRole.FROM_TX2


def high_snr_limits(cfg: AnyConfig, query: HighSnrQuery, scheme) -> RatePair:
    """Limiting secrecy rates as both SNRs grow with ``snr1/snr2 -> q``.

    Every limit is finite for a valid config, so no unbounded marker is
    needed; negative limits clamp to zero like the finite-SNR rates.
    """
    vcfg = validate_config(cfg)
    scheme = Scheme.parse(scheme)
    if not (math.isfinite(query.q) and query.q > 0):
        raise ParamOutOfRange(f"q = {query.q!r} must be finite and > 0")
    if scheme is Scheme.TDMA:
        if query.alpha is None:
            raise ParamOutOfRange("tdma needs alpha")
        _check_unit("alpha", query.alpha)
        return _clamped(query.alpha * math.log(vcfg.g11 / vcfg.g21),
                        (1.0 - query.alpha) * math.log(vcfg.g22 / vcfg.g12))
    if scheme is Scheme.MULTIPLEXED:
        return RatePair(0.0, 0.0)
    lam = query.lam
    if lam is None or not (0.0 < lam <= 1.0):
        raise ParamOutOfRange(f"lambda = {lam!r} must lie in (0, 1]")
    if NoiseRole(query.role) is NoiseRole.FROM_TX2:
        g11, g12, g21, g22, q = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22, query.q
    else:
        g11, g12, g21, g22, q = vcfg.g22, vcfg.g21, vcfg.g12, vcfg.g11, 1.0 / query.q
    protected = math.log((1.0 + g11 * q / g12) / (1.0 + g21 * q / (g22 * lam)))
    limit = _clamped(protected, 0.0)
    if NoiseRole(query.role) is NoiseRole.FROM_TX1:
        return RatePair(limit.r2, limit.r1, limit.clamped2, limit.clamped1)
    return limit
