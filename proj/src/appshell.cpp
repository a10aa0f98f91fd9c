#include "roughvol/appshell.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "roughvol/forecast.hpp"
#include "roughvol/grid.hpp"

namespace rvol::app {

namespace {

std::runtime_error csv_error(const std::string& path, std::size_t line, const std::string& what) {
    return std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& path, std::size_t line, const std::string& field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw csv_error(path, line, "cannot parse number '" + field + "'");
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

}  // namespace

std::string format_number(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(15);
    os << x;
    return os.str();
}

VolSeriesData read_vol_series_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    VolSeriesData out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (lineno == 1 && line.rfind("date", 0) == 0)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw csv_error(path, lineno, "expected 2 fields (date,rv)");
        const double rv = parse_number(path, lineno, fields[1]);
        if (!(rv > 0.0)) throw csv_error(path, lineno, "rv must be positive");
        out.dates.push_back(fields[0]);
        out.rv.push_back(rv);
    }
    if (out.rv.empty()) throw std::runtime_error(path + ": no data rows");
    std::vector<std::size_t> order(out.rv.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.dates[a] < out.dates[b]; });
    VolSeriesData sorted;
    sorted.dates.reserve(order.size());
    sorted.rv.reserve(order.size());
    for (std::size_t i : order) {
        if (!sorted.dates.empty() && sorted.dates.back() == out.dates[i])
            throw std::runtime_error(path + ": duplicate date " + out.dates[i]);
        sorted.reordered = sorted.reordered || i != sorted.dates.size();
        sorted.dates.push_back(out.dates[i]);
        sorted.rv.push_back(out.rv[i]);
    }
    return sorted;
}

std::vector<DatedQuotes> read_varswap_quotes_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<DatedQuotes> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (lineno == 1 && line.rfind("date", 0) == 0)) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw csv_error(path, lineno, "expected 3 fields (date,tenor_days,strike_vol)");
        const double days = parse_number(path, lineno, fields[1]);
        const double strike = parse_number(path, lineno, fields[2]);
        if (!(days > 0.0)) throw csv_error(path, lineno, "tenor_days must be positive");
        if (!(strike > 0.0)) throw csv_error(path, lineno, "strike_vol must be positive");
        auto [it, inserted] = index.try_emplace(fields[0], out.size());
        if (inserted) out.push_back(DatedQuotes{fields[0], {}});
        out[it->second].quotes.push_back(VarSwapQuote{days / 365.0, strike});
    }
    for (DatedQuotes& dq : out) {
        std::sort(dq.quotes.begin(), dq.quotes.end(),
                  [](const VarSwapQuote& a, const VarSwapQuote& b) {
                      return a.tenor_years < b.tenor_years;
                  });
        for (std::size_t i = 1; i < dq.quotes.size(); ++i)
            if (dq.quotes[i].tenor_years == dq.quotes[i - 1].tenor_years)
                throw std::runtime_error(path + ": duplicate tenor for date " + dq.date);
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
    std::ofstream outf(path, std::ios::binary);  // binary: keep LF on every platform
    if (!outf) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        outf << (i ? "," : "") << header[i];
    outf << "\n";
    for (const auto& [label, nums] : rows) {
        outf << label;
        for (double x : nums) outf << "," << format_number(x);
        outf << "\n";
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(path + ": config must be a JSON object");

    RunConfig cfg;
    const auto num = [&](const char* key, double& slot) {
        if (j.contains(key)) {
            if (!j[key].is_number()) throw std::runtime_error(std::string(path) + ": key '" + key + "' must be a number");
            slot = j[key].get<double>();
            j.erase(key);
        }
    };
    const auto str = [&](const char* key, std::string& slot) {
        if (j.contains(key)) {
            if (!j[key].is_string()) throw std::runtime_error(std::string(path) + ": key '" + key + "' must be a string");
            slot = j[key].get<std::string>();
            j.erase(key);
        }
    };
    num("hurst", cfg.hurst);
    num("nu", cfg.nu);
    num("rho", cfg.rho);
    num("xi", cfg.xi);
    num("s0", cfg.s0);
    num("rate", cfg.rate);
    num("mu", cfg.mu);
    num("horizon", cfg.horizon);
    num("gamma", cfg.gamma);
    num("lambda", cfg.lambda);
    num("kappa", cfg.kappa);
    num("theta", cfg.theta);
    num("sigma_cir", cfg.sigma_cir);
    num("y0", cfg.y0);
    num("periods_per_year", cfg.periods_per_year);
    str("normalization", cfg.normalization);
    str("vol_csv", cfg.vol_csv);
    str("quotes_csv", cfg.quotes_csv);
    str("price_csv", cfg.price_csv);
    if (j.contains("estimate_rho")) {
        if (!j["estimate_rho"].is_boolean())
            throw std::runtime_error(path + ": key 'estimate_rho' must be a boolean");
        cfg.estimate_rho = j["estimate_rho"].get<bool>();
        j.erase("estimate_rho");
    }
    if (!j.empty())
        throw std::runtime_error(path + ": unknown config key '" + j.begin().key() + "'");
    if (cfg.normalization != "theorem" && cfg.normalization != "estimation")
        throw std::runtime_error(path + ": normalization must be 'theorem' or 'estimation'");
    return cfg;
}

std::vector<double> physical_forward_variance(const std::vector<double>& rv, double hurst,
                                              double nu, const std::vector<double>& tenors,
                                              double periods_per_year) {
    if (rv.size() < 2) throw std::invalid_argument("physical_forward_variance: series too short");
    const double dt = 1.0 / periods_per_year;
    SampledPath log_var(dt, rv.size() - 1);
    for (std::size_t i = 0; i < rv.size(); ++i) {
        if (!(rv[i] > 0.0))
            throw std::invalid_argument("physical_forward_variance: rv must be positive");
        log_var[i] = 2.0 * std::log(rv[i]);
    }
    std::vector<double> out(tenors.size());
    for (std::size_t k = 0; k < tenors.size(); ++k) {
        const double m = forecast_driver(log_var, hurst, tenors[k]);
        const double var = nu * nu * forecast_error_variance(hurst, tenors[k]);
        out[k] = std::exp(m + 0.5 * var);
    }
    return out;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    if (cfg.vol_csv.empty() || cfg.quotes_csv.empty())
        throw std::runtime_error("run_pipeline: config must set vol_csv and quotes_csv");
    const VolSeriesData vols = read_vol_series_csv(cfg.vol_csv);
    const auto quote_days = read_varswap_quotes_csv(cfg.quotes_csv);

    PipelineResult res;
    res.roughness = estimate_roughness(vols.rv, {0.5, 1.0, 1.5, 2.0, 3.0},
                                       std::min<std::size_t>(30, vols.rv.size() / 3),
                                       cfg.periods_per_year);
    res.rho = cfg.rho;
    if (cfg.estimate_rho) {
        if (cfg.price_csv.empty())
            throw std::runtime_error("run_pipeline: estimate_rho requires price_csv");
        const VolSeriesData prices = read_vol_series_csv(cfg.price_csv);
        if (prices.rv.size() != vols.rv.size())
            throw std::runtime_error("run_pipeline: price and vol series lengths differ");
        res.rho = estimate_correlation_rolling(prices.rv, vols.rv, res.roughness.hurst).rho;
    }

    const NormalizationTag tag = cfg.normalization == "estimation" ? NormalizationTag::Estimation
                                                                   : NormalizationTag::Theorem;
    for (const DatedQuotes& dq : quote_days) {
        PiecewiseCurve xi = bootstrap_forward_variance(dq.quotes);
        std::vector<double> tenors;
        tenors.reserve(dq.quotes.size());
        for (const auto& q : dq.quotes) tenors.push_back(q.tenor_years);
        const std::vector<double> phys = physical_forward_variance(
            vols.rv, res.roughness.hurst, res.roughness.nu, tenors, cfg.periods_per_year);
        res.premia.push_back(extract_premium(xi, tenors, phys, res.roughness.hurst,
                                             res.roughness.nu, res.rho, tag));
        res.forward_curves.push_back(std::move(xi));
        res.physical_forwards.push_back(phys);
        res.quote_dates.push_back(dq.date);
    }
    return res;
}

void write_pipeline_outputs(const PipelineResult& res, const std::string& out_dir) {
    write_csv(out_dir + "/estimates.csv", {"hurst", "nu", "rho"},
              {{format_number(res.roughness.hurst),
                {res.roughness.nu, res.rho}}});
    std::vector<std::pair<std::string, std::vector<double>>> fwd_rows, prem_rows;
    for (std::size_t d = 0; d < res.quote_dates.size(); ++d) {
        const auto& xi = res.forward_curves[d];
        const auto& prem = res.premia[d];
        const auto& knots = xi.knots();
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            const double tenor_days = knots[i + 1] * 365.0;
            fwd_rows.emplace_back(res.quote_dates[d],
                                  std::vector<double>{tenor_days, xi.values()[i],
                                                      res.physical_forwards[d][i]});
            prem_rows.emplace_back(res.quote_dates[d],
                                   std::vector<double>{tenor_days, prem.lambda.values()[i],
                                                       prem.log_ratio[i]});
        }
    }
    write_csv(out_dir + "/forward_variance.csv",
              {"date", "tenor_days", "forward_variance", "physical_forward"}, fwd_rows);
    write_csv(out_dir + "/premium.csv", {"date", "tenor_days", "lambda", "log_ratio"}, prem_rows);
}

}  // namespace rvol::app
