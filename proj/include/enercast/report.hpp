#pragma once

#include "enercast/arimax.hpp"
#include "enercast/config.hpp"
#include "enercast/holt.hpp"
#include "enercast/seds.hpp"
#include "enercast/selection.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace enercast {

inline constexpr const char* kToolName = "enercast";
inline constexpr const char* kToolVersion = "0.1.0";

/// Everything a finished run reports: the fitted model, the backtest table
/// when selection ran, the forecast rows and a provenance block naming every
/// input that shaped the numbers.
struct ForecastReport {
    RunConfig config;
    std::string family;                       // resolved family after selection
    std::optional<ArimaFit> arima;            // arima family
    std::optional<ArimaxFit> arimax;          // arimax family
    std::optional<HoltFit> holt;              // holt family
    std::optional<BacktestReport> backtest;
    std::optional<std::vector<CandidateResult>> grid;
    std::optional<int> selected_d;
    TimeSeries history;
    Forecast forecast;
    std::string scenario_source;              // "file:..." or the auto fallback
    std::vector<std::string> unit_notes;

    nlohmann::ordered_json to_json() const;
    std::string forecast_csv() const;
};

/// Executes a full configured pipeline and writes report.json, forecast.csv
/// and forecast.svg into the configured output directory.
ForecastReport run_config(const RunConfig& config);

/// Scenario CSV: header `year,<col>,...`, strictly consecutive rows.
ExogMatrix parse_scenario_csv(const std::string& path);

struct SuiteOutcome {
    int completed = 0;
    int skipped = 0;
    std::vector<std::string> messages; // one line per model, "<name>: ok|skipped (...)"

    bool all_ok() const { return skipped == 0; }
};

/// Runs the paper's model inventory on a data directory: nine ARIMA(X) model
/// configurations plus four Holt damped-trend renewables forecasts. Models
/// whose inputs are missing are skipped and reported, not fatal.
SuiteOutcome paper_suite(const std::string& data_dir, const std::string& out_dir,
                         std::uint64_t seed = 1);

} // namespace enercast
