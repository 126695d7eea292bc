#include "enercast/selection.hpp"

#include "enercast/errors.hpp"
#include "enercast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace enercast {

double kpss_statistic(const TimeSeries& series) {
    const auto& y = series.values();
    const int n = static_cast<int>(y.size());
    if (n < 10) {
        throw Error(ErrorCode::InsufficientData,
                    "KPSS needs at least 10 observations, got " + std::to_string(n));
    }
    const double mean = sample_mean(y.data(), n);
    std::vector<double> e(static_cast<std::size_t>(n));
    bool all_zero = true;
    for (int t = 0; t < n; ++t) {
        e[static_cast<std::size_t>(t)] = y[static_cast<std::size_t>(t)] - mean;
        if (e[static_cast<std::size_t>(t)] != 0.0) all_zero = false;
    }
    if (all_zero) {
        return 0.0;
    }

    double cum = 0.0;
    double s_sq_sum = 0.0;
    for (int t = 0; t < n; ++t) {
        cum += e[static_cast<std::size_t>(t)];
        s_sq_sum += cum * cum;
    }

    const int lag = static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 0.25)));
    double lrv = 0.0;
    for (int t = 0; t < n; ++t) {
        lrv += e[static_cast<std::size_t>(t)] * e[static_cast<std::size_t>(t)];
    }
    lrv /= n;
    for (int j = 1; j <= lag; ++j) {
        double gamma_j = 0.0;
        for (int t = 0; t + j < n; ++t) {
            gamma_j += e[static_cast<std::size_t>(t)] * e[static_cast<std::size_t>(t + j)];
        }
        gamma_j /= n;
        lrv += 2.0 * (1.0 - static_cast<double>(j) / (lag + 1)) * gamma_j;
    }

    return s_sq_sum / (static_cast<double>(n) * n * lrv);
}

int select_d(const TimeSeries& series, int max_d) {
    if (max_d < 0 || max_d > 2) {
        throw Error(ErrorCode::Argument, "max_d must lie in [0, 2]");
    }
    if (static_cast<int>(series.size()) < 10 + max_d) {
        throw Error(ErrorCode::InsufficientData,
                    "series too short for differencing-order selection");
    }
    for (int d = 0; d <= max_d; ++d) {
        if (kpss_statistic(difference(series, d)) <= kKpssCritical5) {
            return d;
        }
    }
    return max_d;
}

std::vector<CandidateResult> grid_search_aicc(const TimeSeries& series,
                                              const std::optional<ExogMatrix>& exog, int d,
                                              int p_max, int q_max, const FitOptions& options) {
    if (p_max < 0 || q_max < 0 || p_max > 8 || q_max > 8) {
        throw Error(ErrorCode::Argument, "grid bounds must lie in [0, 8]");
    }
    std::vector<CandidateResult> results;
    results.reserve(static_cast<std::size_t>((p_max + 1) * (q_max + 1)));
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            CandidateResult candidate;
            candidate.spec = ArimaSpec{p, d, q};
            try {
                if (exog.has_value()) {
                    const ArimaxFit fit =
                        fit_arimax(series, *exog, candidate.spec, options.exog_lag, options);
                    candidate.aicc = fit.arima.aicc;
                } else {
                    const ArimaFit fit = fit_arima(series, candidate.spec, options);
                    candidate.aicc = fit.aicc;
                }
                candidate.fit_ok = true;
            } catch (const Error& err) {
                candidate.fit_ok = false;
                candidate.aicc = std::numeric_limits<double>::infinity();
                candidate.failure_reason = err.what();
            }
            results.push_back(std::move(candidate));
        }
    }
    const bool any_ok =
        std::any_of(results.begin(), results.end(), [](const auto& c) { return c.fit_ok; });
    if (!any_ok) {
        throw Error(ErrorCode::EmptyGrid,
                    "every candidate in the (p,q) grid failed on '" + series.label() + "'");
    }
    std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        if (a.aicc != b.aicc) return a.aicc < b.aicc;
        if (a.spec.p != b.spec.p) return a.spec.p < b.spec.p;
        return a.spec.q < b.spec.q;
    });
    return results;
}

HoldoutSplit holdout_split(const TimeSeries& series, int holdout) {
    const int n = static_cast<int>(series.size());
    if (holdout < 1 || holdout > n - 15) {
        throw Error(ErrorCode::Argument,
                    "holdout " + std::to_string(holdout) + " outside [1, " +
                        std::to_string(n - 15) + "] for a series of length " + std::to_string(n));
    }
    const auto& v = series.values();
    return {
        TimeSeries(series.start_year(), std::vector<double>(v.begin(), v.end() - holdout),
                   series.label()),
        TimeSeries(series.start_year() + n - holdout,
                   std::vector<double>(v.end() - holdout, v.end()), series.label()),
    };
}

double mse(const std::vector<double>& forecast_points, const std::vector<double>& actual) {
    if (forecast_points.size() != actual.size()) {
        throw Error(ErrorCode::Argument, "forecast and actual lengths differ (" +
                                             std::to_string(forecast_points.size()) + " vs " +
                                             std::to_string(actual.size()) + ")");
    }
    if (forecast_points.empty()) {
        throw Error(ErrorCode::Argument, "MSE of empty sequences is undefined");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double diff = forecast_points[i] - actual[i];
        acc += diff * diff;
    }
    return acc / static_cast<double>(actual.size());
}

const BacktestEntry* BacktestReport::find(const BacktestKey& key) const {
    for (const auto& entry : entries) {
        if (entry.key.spec.p == key.spec.p && entry.key.spec.d == key.spec.d &&
            entry.key.spec.q == key.spec.q && entry.key.exog_set == key.exog_set) {
            return &entry;
        }
    }
    return nullptr;
}

bool backtest_entry_precedes(const BacktestEntry& lhs, const BacktestEntry& rhs) {
    if (lhs.ok != rhs.ok) return lhs.ok;
    if (lhs.mse != rhs.mse) return lhs.mse < rhs.mse;
    if (lhs.params != rhs.params) return lhs.params < rhs.params;
    if (lhs.train_aicc != rhs.train_aicc) return lhs.train_aicc < rhs.train_aicc;
    const auto& a = lhs.key.spec;
    const auto& b = rhs.key.spec;
    if (a.p != b.p) return a.p < b.p;
    if (a.d != b.d) return a.d < b.d;
    if (a.q != b.q) return a.q < b.q;
    return lhs.key.exog_set < rhs.key.exog_set;
}

BacktestReport backtest_select(
    const TimeSeries& series,
    const std::vector<std::pair<std::string, std::optional<ExogMatrix>>>& exog_sets,
    const std::vector<ArimaSpec>& candidate_specs, int holdout, const FitOptions& options) {
    if (candidate_specs.empty()) {
        throw Error(ErrorCode::Argument, "candidate spec list must not be empty");
    }
    if (exog_sets.empty()) {
        throw Error(ErrorCode::Argument, "at least one exogenous set (possibly 'none') required");
    }
    const HoldoutSplit split = holdout_split(series, holdout);

    BacktestReport report;
    report.holdout_years = holdout;

    for (const auto& [set_name, exog] : exog_sets) {
        for (const ArimaSpec& spec : candidate_specs) {
            BacktestEntry entry;
            entry.key = BacktestKey{spec, set_name};
            CandidateResult candidate;
            candidate.spec = spec;
            try {
                Forecast fc;
                if (exog.has_value()) {
                    const ArimaxFit fit =
                        fit_arimax(split.train, *exog, spec, options.exog_lag, options);
                    // Held-out actual exogenous values serve as the future
                    // path, so the score isolates model error.
                    fc = forecast_arimax(fit, *exog, holdout);
                    entry.train_aicc = fit.arima.aicc;
                    entry.params = spec.p + spec.q + (spec.has_constant() ? 1 : 0) +
                                   static_cast<int>(fit.gamma.size());
                } else {
                    const ArimaFit fit = fit_arima(split.train, spec, options);
                    fc = forecast_arima(fit, holdout);
                    entry.train_aicc = fit.aicc;
                    entry.params = spec.p + spec.q + (spec.has_constant() ? 1 : 0);
                }
                entry.mse = mse(fc.point, split.test.values());
                entry.ok = true;
            } catch (const Error& err) {
                entry.ok = false;
                entry.mse = std::numeric_limits<double>::infinity();
                entry.train_aicc = std::numeric_limits<double>::infinity();
                entry.failure_reason = err.what();
            }
            candidate.fit_ok = entry.ok;
            candidate.aicc = entry.train_aicc;
            candidate.failure_reason = entry.failure_reason;
            report.candidates.push_back(std::move(candidate));
            report.entries.push_back(std::move(entry));
        }
    }

    std::stable_sort(report.candidates.begin(), report.candidates.end(),
                     [](const auto& a, const auto& b) { return a.aicc < b.aicc; });

    const BacktestEntry* best = nullptr;
    for (const auto& entry : report.entries) {
        if (!entry.ok) continue;
        if (best == nullptr || backtest_entry_precedes(entry, *best)) {
            best = &entry;
        }
    }
    if (best == nullptr) {
        std::ostringstream os;
        os << "every backtest candidate failed on '" << series.label() << "':";
        for (const auto& entry : report.entries) {
            os << "\n  " << entry.key.to_string() << ": " << entry.failure_reason;
        }
        throw Error(ErrorCode::Selection, os.str());
    }
    report.winner = best->key;
    return report;
}

} // namespace enercast
