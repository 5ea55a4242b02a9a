"""Independent numerical checks of the closed forms.

The estimates here come only from the raw rate expressions in
:mod:`secrecy_ic.rates`; nothing on the estimation path touches the
closed-form derivative or slope code it is compared against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .channel import LN2, AnyConfig, ChannelConfig, validate_config
from .errors import DegenerateStep, NonPositiveMargin, ParamOutOfRange
from .low_snr import (
    Regime, SlopeRegionBoundary, eb_n0_min, rate_derivatives, slope_region_boundary,
)
from .rates import Scheme, multiplexed_kernel, tdma_user_kernel

DEFAULT_STEP = 1e-4
DEFAULT_LADDER = tuple(10.0 ** -k for k in range(1, 8))
ALPHAS = tuple(round(0.1 * k, 1) for k in range(1, 10))
THETAS = (0.01, 0.1, 1.0, 10.0, 100.0)


@dataclass(frozen=True)
class QuadraticFit:
    a: float
    b: float
    h: float


def fit_quadratic(rate_fn: Callable[[float], float], h: float) -> QuadraticFit:
    """Interpolate ``f(s) = a s + b s^2`` through ``f(0) = 0``, ``f(h)``, ``f(2h)``.

    Uses forward samples only, since rates are undefined below zero SNR.
    ``a`` estimates ``f'(0)`` with O(h^2) error and ``2b`` estimates
    ``f''(0)`` with O(h) error.

    Raises
    ------
    DegenerateStep
        If ``h`` is not finite or so small that ``h**2`` underflows.
    """
    if not (math.isfinite(h) and h > 0 and h * h >= np.finfo(float).tiny):
        raise DegenerateStep(f"step h = {h!r} is not a usable positive step")
    f1 = float(rate_fn(h))
    f2 = float(rate_fn(2.0 * h))
    if not (math.isfinite(f1) and math.isfinite(f2)):
        raise DegenerateStep(f"rate is not finite at h = {h!r}")
    return QuadraticFit((4.0 * f1 - f2) / (2.0 * h), (f2 - 2.0 * f1) / (2.0 * h * h), h)


def extrapolated_derivatives(rate_fn, h: float) -> tuple:
    """``(f'(0), f''(0))`` from quadratic fits at ``h`` and ``2h``, Richardson-combined.

    Cancels the leading truncation term of each estimate, leaving O(h^2)
    error in the second derivative.
    """
    fine = fit_quadratic(rate_fn, h)
    coarse = fit_quadratic(rate_fn, 2.0 * h)
    d1 = (4.0 * fine.a - coarse.a) / 3.0
    d2 = 2.0 * (2.0 * fine.b - coarse.b)
    return d1, d2


def _user_rate_functions(vcfg, scheme, param):
    """Per-user rate along the low-SNR ray, plus the SNR scale of each.

    The scale is the largest coefficient multiplying the free SNR inside
    any logarithm, so that ``h / scale`` is a step in received SNR.
    """
    g11, g12, g21, g22 = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22
    if scheme is Scheme.TDMA:
        alpha = param
        return (
            (lambda s: float(tdma_user_kernel(g11, g21, s, alpha)), g11 / alpha),
            (lambda s: float(tdma_user_kernel(g22, g12, s, 1.0 - alpha)), g22 / (1.0 - alpha)),
        )
    theta = param
    # snr2/snr1 that keeps R1/R2 -> theta
    rho = (g11 - g21) / (theta * (g22 - g12))
    return (
        (lambda s: float(multiplexed_kernel(g11, g12, g21, g22, s, rho * s)[0]), g11 + g12 * rho),
        (lambda s: float(multiplexed_kernel(g11, g12, g21, g22, s / rho, s)[1]), g22 + g21 / rho),
    )


@dataclass(frozen=True)
class DerivativeDelta:
    name: str
    estimate: float
    expected: float
    delta: float


@dataclass(frozen=True)
class DerivativeCheck:
    scheme: Scheme
    param: float
    h: float
    tol: float
    deltas: tuple

    @property
    def passed(self) -> bool:
        return all(d.delta <= self.tol for d in self.deltas)

    @property
    def worst(self) -> float:
        return max(d.delta for d in self.deltas)


def verify_derivatives(cfg: AnyConfig, scheme, param: float, h: float = DEFAULT_STEP,
                       tol: float = 1e-3, closed_form=None) -> DerivativeCheck:
    """Compare closed-form zero-SNR derivatives with finite-difference estimates.

    ``h`` is a step in received SNR (dimensionless, ``[1e-6, 1e-2]``); it is
    divided by each rate's SNR scale before sampling. ``closed_form``
    overrides the expected :class:`RateDerivatives`, which lets the harness
    itself be tested against corrupted values.
    """
    vcfg = validate_config(cfg)
    if not vcfg.margin.positive:
        raise NonPositiveMargin("derivative checks need positive secrecy margins")
    if not (1e-6 <= h <= 1e-2):
        raise ParamOutOfRange(f"h = {h!r} must lie in [1e-6, 1e-2]")
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.TDMA and not 0.0 < param < 1.0:
        raise ParamOutOfRange(f"alpha = {param!r} must lie in (0, 1)")
    if scheme is Scheme.MULTIPLEXED and not (math.isfinite(param) and param > 0):
        raise ParamOutOfRange(f"theta = {param!r} must be finite and > 0")
    if scheme is Scheme.ARTIFICIAL_NOISE:
        raise ParamOutOfRange("derivative checks cover tdma and multiplexed only")

    expected = closed_form or rate_derivatives(vcfg, scheme, param)
    deltas = []
    for user, (fn, scale) in enumerate(_user_rate_functions(vcfg, scheme, param), start=1):
        d1, d2 = extrapolated_derivatives(fn, h / scale)
        for name, est, exact in ((f"d1_r{user}", d1, getattr(expected, f"d1_r{user}")),
                                 (f"d2_r{user}", d2, getattr(expected, f"d2_r{user}"))):
            deltas.append(DerivativeDelta(name, est, exact, abs(est - exact) / abs(exact)))
    return DerivativeCheck(scheme, param, h, tol, tuple(deltas))


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    worst_violation: float
    samples: int


def verify_containment(inner, outer_predicate, tol: float = 0.0) -> ContainmentReport:
    """Evaluate an outer region's signed margin at every inner point.

    ``inner`` is an ``(n, 2)`` array of slope pairs or a boundary object;
    ``outer_predicate`` maps ``(s1, s2)`` arrays to signed margins
    (negative inside) or is a :class:`SlopeRegionBoundary`.
    """
    pts = inner.as_array() if hasattr(inner, "as_array") else np.asarray(inner, dtype=float)
    pts = pts.reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("inner point set is empty")
    if isinstance(outer_predicate, SlopeRegionBoundary):
        outer_predicate = outer_predicate.margin
    margins = np.asarray(outer_predicate(pts[:, 0], pts[:, 1]), dtype=float)
    worst = float(margins.max())
    return ContainmentReport(worst <= tol, worst, len(pts))


def _plain_rate_functions(vcfg, scheme, param):
    g11, g12, g21, g22 = vcfg.g11, vcfg.g12, vcfg.g21, vcfg.g22
    if scheme is Scheme.TDMA:
        a = param
        return (lambda s: a * math.log1p(g11 * s / a),
                lambda s: (1.0 - a) * math.log1p(g22 * s / (1.0 - a)))
    rho = g11 / (param * g22)
    return (lambda s: math.log1p(g11 * s / (1.0 + g12 * rho * s)),
            lambda s: math.log1p(g22 * s / (1.0 + g21 * s / rho)))


@dataclass(frozen=True)
class EbLimitCheck:
    energies: tuple
    limits: tuple
    monotone: bool
    limit_deltas: tuple
    tol: float

    @property
    def passed(self) -> bool:
        return self.monotone and all(d <= self.tol for d in self.limit_deltas)


def _energy_per_bit(fn, snr):
    rate = fn(snr)
    # a clamped (zero) secrecy rate costs unbounded energy per bit
    return snr * LN2 / rate if rate > 0 else math.inf


def verify_eb_limit(cfg: AnyConfig, regime=Regime.SECRECY, snr_ladder: Sequence[float] = DEFAULT_LADDER,
                    tol: float = 1e-4, scheme=Scheme.MULTIPLEXED,
                    param: Optional[float] = None) -> EbLimitCheck:
    """Check that ``snr ln2 / R(snr)`` falls as SNR shrinks and tends to ``Eb/N0_min``.

    ``param`` is ``alpha`` (default 0.5) for TDMA or ``theta`` (default 1)
    for multiplexed transmission.
    """
    regime = Regime.parse(regime)
    scheme = Scheme.parse(scheme)
    vcfg = validate_config(cfg)
    if regime is Regime.SECRECY and not vcfg.margin.positive:
        raise NonPositiveMargin("secrecy energy per bit needs positive margins")
    ladder = [float(s) for s in snr_ladder]
    if not ladder or any(s <= 0 for s in ladder) or any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ParamOutOfRange("snr_ladder must be positive and strictly decreasing")
    if param is None:
        param = 0.5 if scheme is Scheme.TDMA else 1.0
    if regime is Regime.SECRECY:
        fns = [fn for fn, _ in _user_rate_functions(vcfg, scheme, param)]
    else:
        fns = _plain_rate_functions(vcfg, scheme, param)
    limits = eb_n0_min(vcfg, regime)
    energies = tuple(tuple(_energy_per_bit(fn, s) for s in ladder) for fn in fns)
    monotone = all(b <= a * (1.0 + 1e-12) for e in energies for a, b in zip(e, e[1:]))
    deltas = tuple(abs(e[-1] - lim) / lim for e, lim in zip(energies, limits))
    return EbLimitCheck(energies, limits, monotone, deltas, tol)


def random_valid_config(rng: np.random.Generator) -> ChannelConfig:
    """Random weak-interference config with positive margins and cross gains.

    Direct gains are log-uniform on [0.1, 10]; each cross gain is a uniform
    fraction in [0.01, 0.95] of the smaller direct gain.
    """
    g11, g22 = 10.0 ** rng.uniform(-1.0, 1.0, size=2)
    lo = min(g11, g22)
    g21, g12 = lo * rng.uniform(0.01, 0.95, size=2)
    return ChannelConfig(float(g11), float(g12), float(g21), float(g22), 1.0, 1.0, 1.0)


def random_valid_configs(seed: int, count: int) -> list:
    rng = np.random.default_rng(seed)
    return [random_valid_config(rng) for _ in range(count)]


VERIFY_CSV_HEADER = ("check", "config_seed", "scheme", "param", "delta", "tolerance", "pass")


@dataclass(frozen=True)
class VerifyRow:
    check: str
    config_seed: str
    scheme: str
    param: Optional[float]
    delta: float
    tolerance: float
    passed: bool

    def csv_row(self):
        return (self.check, self.config_seed, self.scheme, self.param, self.delta,
                self.tolerance, "true" if self.passed else "false")


def verification_rows(cfg: AnyConfig, label: str, h: float = DEFAULT_STEP, tol: float = 1e-3,
                      eb_tol: float = 1e-4, grid_resolution: int = 101):
    """Every oracle check for one config, as report rows."""
    vcfg = validate_config(cfg)
    for scheme, params in ((Scheme.TDMA, ALPHAS), (Scheme.MULTIPLEXED, THETAS)):
        for p in params:
            check = verify_derivatives(vcfg, scheme, p, h, tol)
            for d in check.deltas:
                yield VerifyRow(d.name, label, scheme.value, p, d.delta, tol, d.delta <= tol)
    for regime in (Regime.SECRECY, Regime.NO_SECRECY):
        eb = verify_eb_limit(vcfg, regime, tol=eb_tol)
        for user, delta in enumerate(eb.limit_deltas, start=1):
            yield VerifyRow(f"eb_limit_{regime.value}_{user}", label, Scheme.MULTIPLEXED.value, 1.0,
                            delta, eb_tol, eb.monotone and delta <= eb_tol)
    for scheme in (Scheme.TDMA, Scheme.MULTIPLEXED):
        inner = slope_region_boundary(vcfg, scheme, Regime.SECRECY, grid_resolution)
        outer = slope_region_boundary(vcfg, scheme, Regime.NO_SECRECY, grid_resolution)
        report = verify_containment(inner, outer)
        yield VerifyRow("penalty_containment", label, scheme.value, None,
                        report.worst_violation, 0.0, report.worst_violation < 0.0)
