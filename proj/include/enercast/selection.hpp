#pragma once

#include "enercast/arima.hpp"
#include "enercast/arimax.hpp"
#include "enercast/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enercast {

/// 5% asymptotic critical value of the level-stationarity KPSS statistic.
inline constexpr double kKpssCritical5 = 0.463;

/// Level-stationarity KPSS statistic: partial sums of the demeaned series over
/// a Bartlett-window long-run variance with truncation floor(4 (n/100)^0.25).
/// A constant series scores 0.
double kpss_statistic(const TimeSeries& series);

/// Smallest d in [0, max_d] whose d-times differenced series passes the KPSS
/// test at the 5% critical value; max_d when none does.
int select_d(const TimeSeries& series, int max_d = 2);

struct CandidateResult {
    ArimaSpec spec;
    double aicc = 0.0;
    bool fit_ok = false;
    std::string failure_reason;
};

/// Fits every (p, d, q) with p <= p_max, q <= q_max (with the exogenous
/// columns when given), recording failures instead of aborting. Sorted
/// ascending by AICc, failed candidates (+inf) last.
std::vector<CandidateResult> grid_search_aicc(const TimeSeries& series,
                                              const std::optional<ExogMatrix>& exog, int d,
                                              int p_max = 5, int q_max = 5,
                                              const FitOptions& options = {});

struct HoldoutSplit {
    TimeSeries train;
    TimeSeries test;
};

HoldoutSplit holdout_split(const TimeSeries& series, int holdout);

double mse(const std::vector<double>& forecast_points, const std::vector<double>& actual);

struct BacktestKey {
    ArimaSpec spec;
    std::string exog_set;

    std::string to_string() const { return spec.to_string() + "/" + exog_set; }
};

struct BacktestEntry {
    BacktestKey key;
    double mse = 0.0;
    double train_aicc = 0.0;
    int params = 0; // AR + MA + constant + regression coefficients
    bool ok = false;
    std::string failure_reason;
};

struct BacktestReport {
    std::vector<CandidateResult> candidates; // ranked ascending by AICc
    int holdout_years = 0;
    std::vector<BacktestEntry> entries;      // per (spec, exog set)
    BacktestKey winner;

    const BacktestEntry* find(const BacktestKey& key) const;
};

/// True when lhs beats rhs under the selection order: lower MSE, then fewer
/// parameters, then lower train AICc, then lexicographic (p, d, q).
bool backtest_entry_precedes(const BacktestEntry& lhs, const BacktestEntry& rhs);

/// Fits every (spec, exog set) pair on the training split, forecasts the
/// holdout span (future exogenous values taken from the held-out actuals) and
/// ranks by MSE.
BacktestReport backtest_select(const TimeSeries& series,
                               const std::vector<std::pair<std::string, std::optional<ExogMatrix>>>& exog_sets,
                               const std::vector<ArimaSpec>& candidate_specs, int holdout,
                               const FitOptions& options = {});

} // namespace enercast
