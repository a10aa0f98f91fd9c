#pragma once

#include <string>
#include <vector>

#include "roughvol/inference.hpp"
#include "roughvol/premium.hpp"

namespace rvol::app {

/// Numbers in every CSV we write: 15 significant digits, '.' decimal
/// separator, no thousands grouping.
std::string format_number(double x);

struct VolSeriesData {
    std::vector<std::string> dates;
    std::vector<double> rv;  // realized volatility, annualized vol units
    bool reordered = false;  // input rows were not date-sorted
};

/// Reads a `date,rv` CSV (header required, ISO-8601 dates). Rows are sorted
/// by date; duplicate dates are rejected. Parse failures report the 1-based
/// line number and offending field.
VolSeriesData read_vol_series_csv(const std::string& path);

struct DatedQuotes {
    std::string date;
    std::vector<VarSwapQuote> quotes;  // tenor converted as tenor_days / 365
};

/// Reads a `date,tenor_days,strike_vol` CSV and groups rows by quote date,
/// preserving first-appearance order of the dates; tenors are sorted within
/// each date and duplicate (date, tenor) pairs are rejected. A file with no
/// data rows yields an empty list (the no-work case), not an error.
std::vector<DatedQuotes> read_varswap_quotes_csv(const std::string& path);

/// Writes rows of (label, numbers...) with LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::pair<std::string, std::vector<double>>>& rows);

/// Flat key-value JSON configuration; unknown keys are rejected so typos in
/// option names fail loudly instead of silently using defaults.
struct RunConfig {
    double hurst = 0.1;
    double nu = 1.0;
    double rho = 0.0;
    double xi = 0.04;
    double s0 = 1.0;
    double rate = 0.0;
    double mu = 0.0;
    double horizon = 1.0;
    double gamma = 0.0;  // orthogonal Girsanov component
    double lambda = 0.0; // constant deterministic premium
    double kappa = 1.0, theta = 1.0, sigma_cir = 0.5, y0 = 1.0;  // CIR factor
    double periods_per_year = 252.0;
    std::string normalization = "theorem";  // or "estimation"
    bool estimate_rho = false;
    std::string vol_csv, quotes_csv, price_csv;
};

RunConfig load_config(const std::string& path);

/// Physical forward-variance curve at the requested horizons, by conditional
/// prediction of log variance from the realized-vol history:
///   E_t[v_{t+T}] = exp( m_T + (nu^2/2) C_H T^(2H) / (2H) )
/// with m_T the singular-weight forecast of the log-variance series.
std::vector<double> physical_forward_variance(const std::vector<double>& rv, double hurst,
                                              double nu, const std::vector<double>& tenors,
                                              double periods_per_year = 252.0);

struct PipelineResult {
    RoughnessEstimate roughness;
    double rho = 0.0;
    std::vector<std::string> quote_dates;
    std::vector<PiecewiseCurve> forward_curves;   // one per quote date
    std::vector<ExtractedPremium> premia;         // one per quote date
    std::vector<std::vector<double>> physical_forwards;
};

/// End-to-end extraction: estimate (H, nu) from the realized-vol series,
/// bootstrap a forward-variance curve per quote date, build the physical
/// forward curve by prediction, and solve for the premium.
PipelineResult run_pipeline(const RunConfig& cfg);

/// Writes estimates.csv, forward_variance.csv and premium.csv under out_dir.
void write_pipeline_outputs(const PipelineResult& res, const std::string& out_dir);

}  // namespace rvol::app
