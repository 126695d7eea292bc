#pragma once

#include "enercast/arima.hpp" // Forecast
#include "enercast/optim.hpp"
#include "enercast/series.hpp"

namespace enercast {

/// Smoothing parameters and initial states for the damped linear trend
/// recursion
///   l_t = alpha y_t + (1 - alpha)(l_{t-1} + phi b_{t-1})
///   b_t = beta* (l_t - l_{t-1}) + (1 - beta*) phi b_{t-1}
/// with h-step forecasts l_t + (phi + phi^2 + ... + phi^h) b_t.
struct HoltParams {
    double alpha = 0.5;
    double beta_star = 0.1;
    double phi = 0.95;
    double l0 = 0.0;
    double b0 = 0.0;
};

enum class PhiMode {
    Fixed95,  // paper-replication mode: phi pinned at 0.95
    Estimated // phi searched in [0.8, 0.98]
};

struct HoltFit {
    HoltParams params;
    std::vector<double> levels;
    std::vector<double> trends;
    std::vector<double> fitted; // one-step-ahead fitted values
    double sse = 0.0;
    int n = 0;
    int start_year = 0;
};

inline constexpr double kHoltSmoothingLo = 1e-4;
inline constexpr double kHoltSmoothingHi = 1.0 - 1e-4;
inline constexpr double kHoltPhiLo = 0.8;
inline constexpr double kHoltPhiHi = 0.98;

/// Runs the two recursions from (l0, b0) and accumulates the one-step squared
/// errors. Needs at least 4 observations.
HoltFit holt_filter(const TimeSeries& series, const HoltParams& params);

/// Minimizes the one-step SSE over (alpha, beta*, l0, b0), and phi too in
/// estimated mode. Box constraints are enforced by logistic reparametrization.
HoltFit fit_holt(const TimeSeries& series, PhiMode phi_mode = PhiMode::Fixed95,
                 const OptimOptions& options = {});

/// Point forecasts from the closed form l_n + b_n phi (1 - phi^h) / (1 - phi);
/// interval variance sigma^2 (1 + sum_{j<h} c_j^2) with the damped-trend
/// state-space weights c_j = alpha (1 + beta* sum_{i<=j} phi^i) and
/// sigma^2 = sse / (n - 4).
Forecast forecast_holt(const HoltFit& fit, int horizon, double level = 0.95);

} // namespace enercast
