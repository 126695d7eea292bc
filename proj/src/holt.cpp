#include "enercast/holt.hpp"

#include "enercast/errors.hpp"
#include "enercast/stats.hpp"

#include <cmath>
#include <sstream>

namespace enercast {

HoltFit holt_filter(const TimeSeries& series, const HoltParams& params) {
    const auto& y = series.values();
    const int n = static_cast<int>(y.size());
    if (n < 4) {
        throw Error(ErrorCode::InsufficientData,
                    "holt filter needs at least 4 observations, got " + std::to_string(n));
    }
    HoltFit fit;
    fit.params = params;
    fit.n = n;
    fit.start_year = series.start_year();
    fit.levels.resize(static_cast<std::size_t>(n));
    fit.trends.resize(static_cast<std::size_t>(n));
    fit.fitted.resize(static_cast<std::size_t>(n));

    double level_prev = params.l0;
    double trend_prev = params.b0;
    double sse = 0.0;
    for (int t = 0; t < n; ++t) {
        const double one_step = level_prev + params.phi * trend_prev;
        const double err = y[static_cast<std::size_t>(t)] - one_step;
        sse += err * err;

        const double level = params.alpha * y[static_cast<std::size_t>(t)] +
                             (1.0 - params.alpha) * (level_prev + params.phi * trend_prev);
        const double trend = params.beta_star * (level - level_prev) +
                             (1.0 - params.beta_star) * params.phi * trend_prev;

        fit.fitted[static_cast<std::size_t>(t)] = one_step;
        fit.levels[static_cast<std::size_t>(t)] = level;
        fit.trends[static_cast<std::size_t>(t)] = trend;
        level_prev = level;
        trend_prev = trend;
    }
    fit.sse = sse;
    return fit;
}

HoltFit fit_holt(const TimeSeries& series, PhiMode phi_mode, const OptimOptions& options) {
    const auto& y = series.values();
    const int n = static_cast<int>(y.size());
    if (n < 8) {
        throw Error(ErrorCode::InsufficientData,
                    "holt fit needs at least 8 observations, got " + std::to_string(n));
    }

    const bool estimate_phi = phi_mode == PhiMode::Estimated;
    const double scale = std::max(1.0, std::sqrt(sample_variance(y.data(), n)));

    // Vector layout: [logit(alpha), logit(beta*), l0, b0, (logit(phi))].
    auto decode = [&](const std::vector<double>& v) {
        HoltParams params;
        params.alpha = logistic_to_interval(v[0], kHoltSmoothingLo, kHoltSmoothingHi);
        params.beta_star = logistic_to_interval(v[1], kHoltSmoothingLo, kHoltSmoothingHi);
        params.l0 = v[2];
        params.b0 = v[3];
        params.phi = estimate_phi ? logistic_to_interval(v[4], kHoltPhiLo, kHoltPhiHi) : 0.95;
        return params;
    };
    auto objective = [&](const std::vector<double>& v) {
        return holt_filter(series, decode(v)).sse;
    };

    std::vector<double> x0 = {
        interval_to_logistic(0.5, kHoltSmoothingLo, kHoltSmoothingHi),
        interval_to_logistic(0.1, kHoltSmoothingLo, kHoltSmoothingHi),
        y[0],
        y[1] - y[0],
    };
    std::vector<double> scale_vec = {0.5, 0.5, 0.3 * scale, 0.1 * scale};
    if (estimate_phi) {
        x0.push_back(interval_to_logistic(0.95, kHoltPhiLo, kHoltPhiHi));
        scale_vec.push_back(0.5);
    }

    OptimResult result = multi_start_minimize(objective, x0, scale_vec, options);
    if (!result.converged) {
        std::ostringstream os;
        os << "holt optimizer failed to converge on '" << series.label() << "'; best sse "
           << result.fx;
        throw Error(ErrorCode::Convergence, os.str());
    }
    // The optimizer never worsens the supplied start.
    if (result.fx > objective(x0)) {
        result.x = x0;
    }
    return holt_filter(series, decode(result.x));
}

Forecast forecast_holt(const HoltFit& fit, int horizon, double level) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "forecast horizon must be positive");
    }
    const double z = normal_interval_z(level);
    const double phi = fit.params.phi;
    const double alpha = fit.params.alpha;
    const double beta_star = fit.params.beta_star;
    const double level_n = fit.levels.back();
    const double trend_n = fit.trends.back();
    const double sigma2 = fit.n > 4 ? fit.sse / (fit.n - 4) : 0.0;

    Forecast fc;
    fc.start_year = fit.start_year + fit.n;
    fc.level = level;
    fc.point.reserve(static_cast<std::size_t>(horizon));
    fc.lower.reserve(static_cast<std::size_t>(horizon));
    fc.upper.reserve(static_cast<std::size_t>(horizon));

    double phi_sum = 0.0;   // phi + phi^2 + ... + phi^h
    double phi_pow = 1.0;
    double c_sq_sum = 0.0;  // sum of c_j^2 for j = 1..h-1
    for (int h = 1; h <= horizon; ++h) {
        phi_pow *= phi;
        phi_sum += phi_pow;
        fc.point.push_back(level_n + phi_sum * trend_n);

        const double half_width = z * std::sqrt(sigma2 * (1.0 + c_sq_sum));
        fc.lower.push_back(fc.point.back() - half_width);
        fc.upper.push_back(fc.point.back() + half_width);

        const double c_h = alpha * (1.0 + beta_star * phi_sum);
        c_sq_sum += c_h * c_h;
    }
    return fc;
}

} // namespace enercast
