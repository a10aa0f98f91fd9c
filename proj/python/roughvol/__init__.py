"""Rough-volatility modelling: simulation, measure-change verification and
volatility-risk-premium extraction (C++ core)."""

from ._core import (
    CorrelationEstimate,
    MartingaleReport,
    RoughnessEstimate,
    bootstrap_forward_variance,
    estimate_correlation,
    estimate_correlation_rolling,
    estimate_roughness,
    extract_premium,
    forecast_driver,
    forecast_error_variance,
    increment_variance_scale,
    martingale_suite,
    np_constant,
    premium_forward_map,
    price_variance_swap,
    simulate,
    solve_riccati,
)

__all__ = [
    "CorrelationEstimate",
    "MartingaleReport",
    "RoughnessEstimate",
    "bootstrap_forward_variance",
    "estimate_correlation",
    "estimate_correlation_rolling",
    "estimate_roughness",
    "extract_premium",
    "forecast_driver",
    "forecast_error_variance",
    "increment_variance_scale",
    "martingale_suite",
    "np_constant",
    "premium_forward_map",
    "price_variance_swap",
    "simulate",
    "solve_riccati",
]
