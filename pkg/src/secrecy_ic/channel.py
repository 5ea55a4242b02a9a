"""Two-user Gaussian interference channel configuration.

Gains are power gains ``g_ij = |c_ij|^2``: ``g11`` and ``g22`` are the
direct links, ``g12`` is transmitter 2 -> receiver 1 and ``g21`` is
transmitter 1 -> receiver 2. Rates are handled in nats internally.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Union

from .errors import ConfigFormatError, NonPositiveParameter, NotWeakInterference

LN2 = math.log(2.0)


class RateUnits(str, enum.Enum):
    NATS = "nats"
    BITS = "bits"


def convert_rate(value, from_units, to_units):
    """Convert a rate (scalar or array) between nats and bits."""
    from_units = RateUnits(from_units)
    to_units = RateUnits(to_units)
    if from_units is to_units:
        return value
    if from_units is RateUnits.NATS:
        return value / LN2
    return value * LN2


@dataclass(frozen=True)
class ChannelConfig:
    g11: float
    g12: float
    g21: float
    g22: float
    sigma2: float = 1.0
    p1: float = 1.0
    p2: float = 1.0

    @classmethod
    def from_amplitudes(cls, c11, c12, c21, c22, sigma2=1.0, p1=1.0, p2=1.0):
        g11, g12, g21, g22 = amplitude_to_power_gains(c11, c12, c21, c22)
        return cls(g11, g12, g21, g22, sigma2, p1, p2)

    def swapped(self) -> "ChannelConfig":
        """Relabel the users (1 <-> 2)."""
        return ChannelConfig(
            g11=self.g22, g12=self.g21, g21=self.g12, g22=self.g11,
            sigma2=self.sigma2, p1=self.p2, p2=self.p1,
        )

    def scaled_gains(self, kappa: float) -> "ChannelConfig":
        return replace(
            self, g11=self.g11 * kappa, g12=self.g12 * kappa,
            g21=self.g21 * kappa, g22=self.g22 * kappa,
        )


@dataclass(frozen=True)
class SecrecyMargin:
    m1: float
    m2: float

    @property
    def positive1(self) -> bool:
        return self.m1 > 0

    @property
    def positive2(self) -> bool:
        return self.m2 > 0

    @property
    def positive(self) -> bool:
        return self.positive1 and self.positive2


@dataclass(frozen=True)
class ValidatedConfig:
    """A checked :class:`ChannelConfig` with its SNR limits and margins."""

    config: ChannelConfig
    snr1: float
    snr2: float
    margin: SecrecyMargin

    g11 = property(lambda self: self.config.g11)
    g12 = property(lambda self: self.config.g12)
    g21 = property(lambda self: self.config.g21)
    g22 = property(lambda self: self.config.g22)
    sigma2 = property(lambda self: self.config.sigma2)
    p1 = property(lambda self: self.config.p1)
    p2 = property(lambda self: self.config.p2)

    def swapped(self) -> "ValidatedConfig":
        return validate_config(self.config.swapped())


AnyConfig = Union[ChannelConfig, ValidatedConfig]


def validate_config(raw: AnyConfig) -> ValidatedConfig:
    """Check positivity and weak interference; annotate SNRs and margins.

    A non-positive secrecy margin is *not* an error here. It is recorded in
    ``margin`` and the low-SNR operations refuse such configs themselves.

    Raises
    ------
    NonPositiveParameter
        If any field is non-finite or <= 0.
    NotWeakInterference
        If ``g12 >= g11`` or ``g21 >= g22``.
    """
    cfg = raw.config if isinstance(raw, ValidatedConfig) else raw
    for name in ("g11", "g12", "g21", "g22", "sigma2", "p1", "p2"):
        value = getattr(cfg, name)
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise NonPositiveParameter(f"{name} is not a number: {value!r}") from None
        if not math.isfinite(value) or value <= 0.0:
            raise NonPositiveParameter(f"{name} must be finite and > 0, got {value!r}")
    if not cfg.g12 < cfg.g11:
        raise NotWeakInterference(f"g12/g11 = {cfg.g12 / cfg.g11:.6g} must be < 1")
    if not cfg.g21 < cfg.g22:
        raise NotWeakInterference(f"g21/g22 = {cfg.g21 / cfg.g22:.6g} must be < 1")
    snr1 = cfg.p1 / cfg.sigma2
    snr2 = cfg.p2 / cfg.sigma2
    if not (math.isfinite(snr1) and math.isfinite(snr2) and snr1 > 0 and snr2 > 0):
        raise NonPositiveParameter(f"SNR pair ({snr1!r}, {snr2!r}) is not finite and positive")
    margin = SecrecyMargin(cfg.g11 - cfg.g21, cfg.g22 - cfg.g12)
    return ValidatedConfig(cfg, snr1, snr2, margin)


def amplitude_to_power_gains(c11, c12, c21, c22):
    return tuple(abs(c) ** 2 for c in (c11, c12, c21, c22))


_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_GAIN_KEYS = ("g11", "g12", "g21", "g22")
_AMP_KEYS = ("c11", "c12", "c21", "c22")
_OTHER_KEYS = ("sigma2", "p1", "p2")


def parse_config_text(text: str) -> ChannelConfig:
    """Parse the flat ``key = value`` config format.

    ``#`` starts a comment. Gains are given either as power gains
    (``g11 g12 g21 g22``) or as amplitudes (``c11 c12 c21 c22``), never both.
    ``sigma2``, ``p1`` and ``p2`` are required.
    """
    values: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigFormatError(f"line {lineno}: expected key=value, got {line!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        key = key.lower()
        if key not in _GAIN_KEYS + _AMP_KEYS + _OTHER_KEYS:
            raise ConfigFormatError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigFormatError(f"line {lineno}: duplicate key {key!r}")
        if not _NUMBER.match(value):
            raise ConfigFormatError(f"line {lineno}: {key} has non-numeric value {value!r}")
        values[key] = float(value)

    has_g = [k for k in _GAIN_KEYS if k in values]
    has_c = [k for k in _AMP_KEYS if k in values]
    if has_g and has_c:
        raise ConfigFormatError("power gains (g..) and amplitudes (c..) are mutually exclusive")
    keys = _AMP_KEYS if has_c else _GAIN_KEYS
    missing = [k for k in keys + _OTHER_KEYS if k not in values]
    if missing:
        raise ConfigFormatError(f"missing keys: {', '.join(missing)}")
    gains = [values[k] for k in keys]
    if has_c:
        gains = amplitude_to_power_gains(*gains)
    return ChannelConfig(*gains, sigma2=values["sigma2"], p1=values["p1"], p2=values["p2"])


def load_config(path) -> ChannelConfig:
    return parse_config_text(Path(path).read_text())


def format_config_text(cfg: AnyConfig) -> str:
    cfg = cfg.config if isinstance(cfg, ValidatedConfig) else cfg
    return "".join(
        f"{name} = {getattr(cfg, name)!r}\n"
        for name in _GAIN_KEYS + _OTHER_KEYS
    )
