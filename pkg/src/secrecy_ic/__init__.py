"""Secrecy rate regions and low-SNR energy efficiency of the two-user weak
Gaussian interference channel."""

__version__ = "0.1.0"

from .analysis import (
    PenaltyReport, SchemeVerdict, Verdict, divergence_window, phi_thresholds, secrecy_penalty,
    select_scheme,
)
from .channel import (
    ChannelConfig, RateUnits, SecrecyMargin, ValidatedConfig, amplitude_to_power_gains,
    convert_rate, load_config, parse_config_text, validate_config,
)
from .errors import (
    ChannelError, ConfigFormatError, DegenerateStep, NonPositiveMargin, NonPositiveParameter,
    NotWeakInterference, ParamOutOfRange,
)
from .low_snr import (
    LowSnrMetrics, RateDerivatives, Regime, SlopeConstants, SlopeRegionBoundary, eb_n0_min,
    low_snr_metrics, rate_derivatives, slope_constants, slope_region_boundary, slopes_multiplexed,
    slopes_tdma,
)
from .rates import (
    FirstOrderCoefficients, HighSnrQuery, NoiseRole, RatePair, RegionBoundary, Scheme,
    achievable_region, artificial_noise_rates, first_order_region, hausdorff_distance,
    high_snr_limits, multiplexed_rates, pareto_frontier, tdma_rates,
)
