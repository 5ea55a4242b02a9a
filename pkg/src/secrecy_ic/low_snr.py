"""Low-SNR energy efficiency: rate derivatives at zero SNR, minimum energy
per bit and wideband slopes for TDMA and multiplexed transmission.

Rates are in nats, so ``Eb/N0_min = ln 2 / R'(0)`` and the wideband slope
is ``S = 2 R'(0)^2 / (-R''(0))`` in bits/s/Hz per 3 dB (AWGN gives 2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import LN2, AnyConfig, ValidatedConfig, validate_config
from .errors import NonPositiveMargin, ParamOutOfRange
from .rates import Scheme


class Regime(str, enum.Enum):
    SECRECY = "secrecy"
    NO_SECRECY = "no_secrecy"

    @classmethod
    def parse(cls, value) -> "Regime":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "_")
        return cls.NO_SECRECY if key in ("nosecrecy", "no_secrecy") else cls(key)


def require_positive_margin(cfg: AnyConfig) -> ValidatedConfig:
    vcfg = validate_config(cfg)
    if not vcfg.margin.positive:
        raise NonPositiveMargin(
            f"secrecy margins must be positive: g11-g21 = {vcfg.margin.m1:.6g}, "
            f"g22-g12 = {vcfg.margin.m2:.6g}"
        )
    return vcfg


def _checked(cfg, regime):
    regime = Regime.parse(regime)
    if regime is Regime.SECRECY:
        return require_positive_margin(cfg), regime
    return validate_config(cfg), regime


def _first_order(vcfg, regime):
    if regime is Regime.SECRECY:
        return vcfg.margin.m1, vcfg.margin.m2
    return vcfg.g11, vcfg.g22


@dataclass(frozen=True)
class RateDerivatives:
    d1_r1: float
    d1_r2: float
    d2_r1: float
    d2_r2: float


@dataclass(frozen=True)
class SlopeConstants:
    A: float
    B: float


@dataclass(frozen=True)
class LowSnrMetrics:
    eb_n0_min_1: float
    eb_n0_min_2: float
    slope_s1: float
    slope_s2: float
    derivatives: RateDerivatives


def to_db(value):
    return 10.0 * np.log10(value)


def snr_ratio_for_theta(cfg: AnyConfig, theta: float, regime=Regime.SECRECY) -> float:
    """``snr2/snr1`` that makes the vanishing rates satisfy ``R1/R2 = theta``."""
    vcfg, regime = _checked(cfg, regime)
    _check_theta(theta)
    d1, d2 = _first_order(vcfg, regime)
    return d1 / (theta * d2)


def _check_theta(theta):
    if not (math.isfinite(theta) and theta > 0):
        raise ParamOutOfRange(f"theta = {theta!r} must be finite and > 0")


def _check_open_alpha(alpha):
    if not (0.0 < alpha < 1.0):
        raise ParamOutOfRange(f"alpha = {alpha!r} must lie in (0, 1)")


def rate_derivatives(cfg: AnyConfig, scheme, param: float,
                     regime=Regime.SECRECY) -> RateDerivatives:
    """First and second derivatives of each user's rate at zero SNR.

    ``param`` is the time share ``alpha`` for TDMA and the rate ratio
    ``theta = R1/R2`` for multiplexed transmission. Each user's rate is
    differentiated with respect to its own SNR, the other SNR being tied
    to it through ``theta``.
    """
    vcfg, regime = _checked(cfg, regime)
    scheme = Scheme.parse(scheme)
    g11, g12, g21, g22 = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22
    d1, d2 = _first_order(vcfg, regime)
    # a receiver's own-signal and eavesdropped second-order terms
    q1 = g11 ** 2 - (g21 ** 2 if regime is Regime.SECRECY else 0.0)
    q2 = g22 ** 2 - (g12 ** 2 if regime is Regime.SECRECY else 0.0)
    if scheme is Scheme.TDMA:
        _check_open_alpha(param)
        return RateDerivatives(d1, d2, -q1 / param, -q2 / (1.0 - param))
    if scheme is Scheme.MULTIPLEXED:
        _check_theta(param)
        return RateDerivatives(
            d1, d2,
            -(q1 + 2.0 * g11 * g12 * d1 / (param * d2)),
            -(q2 + 2.0 * g22 * g21 * param * d2 / d1),
        )
    raise ParamOutOfRange(f"no low-SNR expansion for {scheme.value}")


def wideband_slope(d1: float, d2: float) -> float:
    return 2.0 * d1 * d1 / -d2


def eb_n0_min(cfg: AnyConfig, regime=Regime.SECRECY) -> tuple:
    """Minimum energy per bit ``(user 1, user 2)`` as linear ratios.

    Identical for TDMA and multiplexed transmission.
    """
    vcfg, regime = _checked(cfg, regime)
    d1, d2 = _first_order(vcfg, regime)
    return LN2 / d1, LN2 / d2


def slope_constants(cfg: AnyConfig) -> SlopeConstants:
    vcfg = require_positive_margin(cfg)
    return SlopeConstants(
        vcfg.margin.m1 / (vcfg.g11 + vcfg.g21),
        vcfg.margin.m2 / (vcfg.g22 + vcfg.g12),
    )


def _axis_limits(vcfg, regime):
    """Largest slope each user reaches alone: ``(2A, 2B)`` or ``(2, 2)``."""
    if regime is Regime.SECRECY:
        c = slope_constants(vcfg)
        return 2.0 * c.A, 2.0 * c.B
    return 2.0, 2.0


def product_constant(cfg: AnyConfig, regime=Regime.SECRECY) -> float:
    """Right-hand side of the multiplexed slope-boundary identity.

    ``(S1max/S1 - 1)(S2max/S2 - 1)`` equals this constant along the
    boundary, where ``S_imax`` is the single-user slope.
    """
    vcfg, regime = _checked(cfg, regime)
    g11, g12, g21, g22 = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22
    if regime is Regime.SECRECY:
        return 4.0 * g11 * g12 * g22 * g21 / ((g11 ** 2 - g21 ** 2) * (g22 ** 2 - g12 ** 2))
    return 4.0 * g12 * g21 / (g22 * g11)


def slopes_tdma(cfg: AnyConfig, alpha: float, regime=Regime.SECRECY) -> tuple:
    vcfg, regime = _checked(cfg, regime)
    if not (0.0 <= alpha <= 1.0):
        raise ParamOutOfRange(f"alpha = {alpha!r} must lie in [0, 1]")
    s1max, s2max = _axis_limits(vcfg, regime)
    return alpha * s1max, (1.0 - alpha) * s2max


def slopes_multiplexed(cfg: AnyConfig, theta: float, regime=Regime.SECRECY) -> tuple:
    vcfg, regime = _checked(cfg, regime)
    _check_theta(theta)
    g11, g12, g21, g22 = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22
    d1, d2 = _first_order(vcfg, regime)
    if regime is Regime.SECRECY:
        s1 = 2.0 * d1 / (g11 + g21 + 2.0 * g11 * g12 / (theta * d2))
        s2 = 2.0 * d2 / (g22 + g12 + 2.0 * g22 * g21 * theta / d1)
    else:
        s1 = 2.0 / (1.0 + 2.0 * g12 / (theta * g22))
        s2 = 2.0 / (1.0 + 2.0 * g21 * theta / g11)
    return s1, s2


def low_snr_metrics(cfg: AnyConfig, scheme, param: float, regime=Regime.SECRECY) -> LowSnrMetrics:
    der = rate_derivatives(cfg, scheme, param, regime)
    eb1, eb2 = eb_n0_min(cfg, regime)
    return LowSnrMetrics(
        eb1, eb2, wideband_slope(der.d1_r1, der.d2_r1), wideband_slope(der.d1_r2, der.d2_r2), der,
    )


@dataclass(frozen=True)
class SlopePoint:
    param: float
    s1: float
    s2: float


@dataclass(frozen=True)
class SlopeRegionBoundary:
    regime: Regime
    scheme: Scheme
    points: tuple
    s1_max: float
    s2_max: float
    phi: float

    def as_array(self) -> np.ndarray:
        return np.array([[p.s1, p.s2] for p in self.points], dtype=float).reshape(-1, 2)

    def csv_rows(self):
        for p in self.points:
            yield (self.regime.value, self.scheme.value, p.param, p.s1, p.s2)

    def identity_residual(self, point: SlopePoint) -> float:
        """Relative residual of the defining boundary identity at ``point``."""
        if self.scheme is Scheme.TDMA:
            return abs(point.s1 / self.s1_max + point.s2 / self.s2_max - 1.0)
        # (s_max - s) / s: the subtraction is exact close to the axis limit
        lhs = ((self.s1_max - point.s1) / point.s1) * ((self.s2_max - point.s2) / point.s2)
        return abs(lhs - self.phi) / self.phi

    def area(self) -> float:
        """Trapezoidal area under the boundary, closed onto both axes."""
        pts = self.as_array()
        pts = np.vstack(([0.0, self.s2_max], pts[np.argsort(pts[:, 0], kind="stable")],
                         [self.s1_max, 0.0]))
        return float(np.trapezoid(pts[:, 1], pts[:, 0]))

    def margin(self, s1, s2):
        return slope_region_margin(s1, s2, self.s1_max, self.s2_max,
                                   1.0 if self.scheme is Scheme.TDMA else self.phi)


SLOPE_CSV_HEADER = ("regime", "scheme", "param", "s1", "s2")

THETA_RANGE = (1e-4, 1e4)


def _on_curve(s1, s2, s1_max, s2_max, phi):
    """Re-derive the far coordinate from the one nearer its axis limit.

    Near an axis the product identity has condition number ~ 1/(1 - u), so
    one rounding of the near coordinate already costs ~1e-9 at the ends of
    the theta grid. Deriving the other coordinate from the rounded one
    keeps the emitted pair on the curve.
    """
    if s1 / s1_max >= s2 / s2_max:
        d1 = s1_max - s1
        return s1, s2_max * d1 / (d1 + phi * s1)
    d2 = s2_max - s2
    return s1_max * d2 / (d2 + phi * s2), s2


def slope_region_boundary(cfg: AnyConfig, scheme, regime=Regime.SECRECY,
                          grid_resolution: int = 101,
                          theta_range: Optional[tuple] = None) -> SlopeRegionBoundary:
    """Sampled boundary of the achievable slope region.

    TDMA samples ``alpha`` uniformly on [0, 1]; multiplexed samples
    ``theta`` log-uniformly on ``theta_range`` (default 1e-4 .. 1e4).
    Points are ordered by the generating parameter.
    """
    vcfg, regime = _checked(cfg, regime)
    scheme = Scheme.parse(scheme)
    n = int(grid_resolution)
    if n < 2:
        raise ParamOutOfRange(f"grid resolution must be >= 2, got {n}")
    s1_max, s2_max = _axis_limits(vcfg, regime)
    if scheme is Scheme.TDMA:
        params = np.linspace(0.0, 1.0, n)
        pairs = [slopes_tdma(vcfg, a, regime) for a in params]
        phi = 1.0
    elif scheme is Scheme.MULTIPLEXED:
        lo, hi = theta_range or THETA_RANGE
        params = np.logspace(math.log10(lo), math.log10(hi), n)
        phi = product_constant(vcfg, regime)
        pairs = [_on_curve(*slopes_multiplexed(vcfg, t, regime), s1_max, s2_max, phi)
                 for t in params]
    else:
        raise ParamOutOfRange(f"no slope region for {scheme.value}")
    points = tuple(SlopePoint(float(p), float(s1), float(s2)) for p, (s1, s2) in zip(params, pairs))
    return SlopeRegionBoundary(regime, scheme, points, s1_max, s2_max, phi)


def slope_region_margin(s1, s2, s1_max, s2_max, phi):
    """Signed membership margin of ``(s1, s2)`` in a slope region.

    The region is ``v <= (1-u)/(1-u+phi*u)`` with ``u = s1/s1_max`` and
    ``v = s2/s2_max``; ``phi = 1`` is the TDMA triangle. Negative means
    strictly inside, zero on the boundary, positive outside.
    """
    u = np.asarray(s1, dtype=float) / s1_max
    v = np.asarray(s2, dtype=float) / s2_max
    uc = np.clip(u, 0.0, 1.0)
    edge = (1.0 - uc) / (1.0 - uc + phi * uc)
    return v - edge + np.maximum(u - 1.0, 0.0) + np.maximum(-u, 0.0)
