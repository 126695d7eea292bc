#include "enercast/arimax.hpp"

#include "enercast/errors.hpp"
#include "enercast/holt.hpp"
#include "enercast/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace enercast {

namespace {

constexpr double kCollinearityTol = 1e-8;

void check_identifiable(const std::vector<TimeSeries>& columns) {
    for (const auto& col : columns) {
        const auto& v = col.values();
        if (sample_variance(v.data(), static_cast<int>(v.size())) == 0.0) {
            throw Error(ErrorCode::Collinearity,
                        "exogenous column '" + col.label() + "' is constant");
        }
    }
    if (columns.size() < 2) return;

    const auto n = static_cast<Eigen::Index>(columns.front().size());
    const auto m = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXd design(n, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto& v = columns[static_cast<std::size_t>(k)].values();
        for (Eigen::Index t = 0; t < n; ++t) {
            design(t, k) = v[static_cast<std::size_t>(t)];
        }
        design.col(k).normalize();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(kCollinearityTol);
    if (qr.rank() < m) {
        throw Error(ErrorCode::Collinearity, "exogenous columns are collinear");
    }
}

} // namespace

ExogMatrix::ExogMatrix(std::vector<TimeSeries> columns) {
    if (columns.empty()) {
        throw Error(ErrorCode::Argument, "exogenous matrix needs at least one column");
    }
    columns_ = align_panel(columns);
    check_identifiable(columns_);
}

ExogMatrix::ExogMatrix(std::vector<TimeSeries> columns, ScenarioTag) {
    if (columns.empty()) {
        throw Error(ErrorCode::Argument, "exogenous matrix needs at least one column");
    }
    columns_ = align_panel(columns);
}

ExogMatrix ExogMatrix::scenario(std::vector<TimeSeries> columns) {
    return {std::move(columns), ScenarioTag{}};
}

std::vector<std::string> ExogMatrix::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& col : columns_) out.push_back(col.label());
    return out;
}

const TimeSeries* ExogMatrix::find(const std::string& name) const {
    for (const auto& col : columns_) {
        if (col.label() == name) return &col;
    }
    return nullptr;
}

namespace detail_arimax {

// Differences each column d times after dropping the last `lag` rows, so row t
// of the result lines up with response year t (X_{t-lag} explains y_t).
std::vector<std::vector<double>> lagged_differenced_columns(const std::vector<TimeSeries>& cols,
                                                            int lag, int d) {
    std::vector<std::vector<double>> out;
    out.reserve(cols.size());
    for (const auto& col : cols) {
        const auto& v = col.values();
        if (static_cast<int>(v.size()) <= lag + d) {
            throw Error(ErrorCode::InsufficientData,
                        "column '" + col.label() + "' too short after lag shift");
        }
        TimeSeries shifted(col.start_year(), std::vector<double>(v.begin(), v.end() - lag),
                           col.label());
        out.push_back(difference(shifted, d).values());
    }
    return out;
}

} // namespace detail_arimax

ArimaxFit fit_arimax(const TimeSeries& series, const ExogMatrix& exog, const ArimaSpec& spec,
                     int exog_lag, const FitOptions& options) {
    validate_spec(spec);
    if (exog_lag < 0) {
        throw Error(ErrorCode::Argument, "exogenous lag must be non-negative");
    }

    // Trim everything to the common year overlap; the response rides along as
    // the first entry.
    std::vector<TimeSeries> bundle;
    bundle.reserve(exog.column_count() + 1);
    bundle.push_back(series);
    for (const auto& col : exog.columns()) bundle.push_back(col);
    std::vector<TimeSeries> aligned = align_panel(bundle);
    const TimeSeries y_full = aligned.front();
    const std::vector<TimeSeries> x_cols(aligned.begin() + 1, aligned.end());

    const int L = exog_lag;
    const int d = spec.d;
    const int n_total = static_cast<int>(y_full.size());
    if (n_total <= L + d) {
        throw Error(ErrorCode::InsufficientData, "series too short after lag and differencing");
    }

    const TimeSeries y_lagged = y_full.slice_years(y_full.start_year() + L, y_full.end_year());
    const std::vector<double> y_diff = difference(y_lagged, d).values();
    const int n = static_cast<int>(y_diff.size());
    if (n < spec.p + spec.q + 10) {
        throw Error(ErrorCode::InsufficientData,
                    "effective sample " + std::to_string(n) + " below required " +
                        std::to_string(spec.p + spec.q + 10));
    }
    if (sample_variance(y_diff.data(), n) == 0.0) {
        throw Error(ErrorCode::DegenerateSeries,
                    "differenced series '" + series.label() + "' is constant");
    }
    const double sigma2_floor = detail::sigma2_floor_for(y_diff);

    const std::size_t m = exog.column_count();
    std::vector<std::vector<double>> x_diff =
        detail_arimax::lagged_differenced_columns(x_cols, L, d);

    // Standardize columns so the search geometry (and hence the optimizer
    // path) is invariant to column rescaling.
    std::vector<double> col_scale(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double sd = std::sqrt(sample_variance(x_diff[k].data(), n));
        if (sd > 0.0) {
            col_scale[k] = sd;
        } else {
            const double mu = std::abs(sample_mean(x_diff[k].data(), n));
            if (mu == 0.0) {
                throw Error(ErrorCode::Collinearity,
                            "column '" + x_cols[k].label() +
                                "' vanishes after differencing; coefficient unidentifiable");
            }
            col_scale[k] = mu;
        }
        for (double& v : x_diff[k]) v /= col_scale[k];
    }

    const bool constant = spec.has_constant();
    const int p = spec.p;
    const int q = spec.q;

    // Ordinary least squares on the differenced, standardized design seeds
    // the joint search.
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(m) + (constant ? 1 : 0));
    Eigen::VectorXd rhs(n);
    for (int t = 0; t < n; ++t) {
        rhs(t) = y_diff[static_cast<std::size_t>(t)];
        for (std::size_t k = 0; k < m; ++k) {
            design(t, static_cast<Eigen::Index>(k)) = x_diff[k][static_cast<std::size_t>(t)];
        }
        if (constant) design(t, static_cast<Eigen::Index>(m)) = 1.0;
    }
    const Eigen::VectorXd ols = design.colPivHouseholderQr().solve(rhs);
    std::vector<double> gamma_init(m);
    for (std::size_t k = 0; k < m; ++k) gamma_init[k] = ols(static_cast<Eigen::Index>(k));
    const double alpha_init = constant ? ols(static_cast<Eigen::Index>(m)) : 0.0;

    // Vector layout: [d_gamma (m), z_ar (p), z_ma (q), d_alpha (0/1)],
    // offsets from the OLS seed so zero is the canonical start.
    const int dim = static_cast<int>(m) + p + q + (constant ? 1 : 0);
    auto decode = [&](const std::vector<double>& v, std::vector<double>& gamma_std,
                      ArimaParams& params) {
        gamma_std.resize(m);
        for (std::size_t k = 0; k < m; ++k) gamma_std[k] = gamma_init[k] + v[k];
        auto it = v.begin() + static_cast<std::ptrdiff_t>(m);
        params.ar = unconstrained_to_ar(std::vector<double>(it, it + p));
        params.ma = unconstrained_to_ar(std::vector<double>(it + p, it + p + q));
        for (double& c : params.ma) c = -c;
        params.intercept = constant ? alpha_init + v[static_cast<std::size_t>(dim - 1)] : 0.0;
    };

    std::vector<double> u(static_cast<std::size_t>(n));
    auto objective = [&](const std::vector<double>& v) {
        std::vector<double> gamma_std;
        ArimaParams params;
        decode(v, gamma_std, params);
        for (int t = 0; t < n; ++t) {
            double r = y_diff[static_cast<std::size_t>(t)];
            for (std::size_t k = 0; k < m; ++k) {
                r -= gamma_std[k] * x_diff[k][static_cast<std::size_t>(t)];
            }
            u[static_cast<std::size_t>(t)] = r;
        }
        return -detail::css_loglik_unchecked(u, params, p, q, sigma2_floor);
    };

    const double y_sd = std::sqrt(sample_variance(y_diff.data(), n));
    std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> scale(static_cast<std::size_t>(dim), 0.4);
    for (std::size_t k = 0; k < m; ++k) scale[k] = 0.4 * std::max(y_sd, 1e-8);
    if (constant) scale.back() = 0.4 * std::max(y_sd, 1e-8);

    OptimResult result = multi_start_minimize(objective, x0, scale, options.optim);
    if (!result.converged) {
        std::ostringstream os;
        os << "ARIMAX" << spec.to_string() << " optimizer failed to converge on '"
           << series.label() << "'";
        throw Error(ErrorCode::Convergence, os.str());
    }

    std::vector<double> gamma_std;
    ArimaParams error_params;
    decode(result.x, gamma_std, error_params);

    ArimaxFit fit;
    fit.exog_lag = L;
    fit.exog_names = exog.names();
    fit.gamma.resize(m);
    for (std::size_t k = 0; k < m; ++k) fit.gamma[k] = gamma_std[k] / col_scale[k];

    // Error process in levels: eta_t = y_t - sum_k gamma_k x_k(t - L).
    std::vector<double> eta(y_lagged.values());
    for (int t = 0; t < static_cast<int>(eta.size()); ++t) {
        for (std::size_t k = 0; k < m; ++k) {
            eta[static_cast<std::size_t>(t)] -=
                fit.gamma[k] * x_cols[k].values()[static_cast<std::size_t>(t)];
        }
    }
    const TimeSeries eta_series(y_lagged.start_year(), std::move(eta), series.label() + ".err");
    fit.arima = detail::assemble_arima_fit(eta_series, spec, error_params, sigma2_floor, m);

    for (std::size_t k = 0; k < m; ++k) {
        const auto& v = x_cols[k].values();
        const std::size_t keep = std::min(v.size(), static_cast<std::size_t>(std::max(L, 1)));
        fit.exog_tail.emplace_back(v.end() - static_cast<std::ptrdiff_t>(keep), v.end());
    }
    fit.exog_tail_end_year = x_cols.front().end_year();
    return fit;
}

Forecast forecast_arimax(const ArimaxFit& fit, const ExogMatrix& future_exog, int horizon,
                         double level) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "forecast horizon must be positive");
    }
    const std::size_t m = fit.gamma.size();
    const int L = fit.exog_lag;
    const int last_train_year = fit.arima.train_end_year;

    // Regression contribution for forecast year T+s comes from the exogenous
    // value at T+s-L: recent training rows when the lag reaches back, the
    // scenario otherwise.
    std::vector<double> reg_shift(static_cast<std::size_t>(horizon), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::string& name = fit.exog_names[k];
        const TimeSeries* future_col = future_exog.find(name);
        for (int s = 1; s <= horizon; ++s) {
            const int x_year = last_train_year + s - L;
            double x_value;
            if (x_year <= fit.exog_tail_end_year) {
                const auto& tail = fit.exog_tail[k];
                const int offset = fit.exog_tail_end_year - x_year;
                if (offset >= static_cast<int>(tail.size())) {
                    throw Error(ErrorCode::ScenarioIncomplete,
                                "training tail of column '" + name + "' does not reach year " +
                                    std::to_string(x_year));
                }
                x_value = tail[tail.size() - 1 - static_cast<std::size_t>(offset)];
            } else {
                if (future_col == nullptr) {
                    throw Error(ErrorCode::ScenarioIncomplete,
                                "scenario is missing column '" + name + "'");
                }
                if (!future_col->covers_year(x_year)) {
                    throw Error(ErrorCode::ScenarioIncomplete,
                                "scenario column '" + name + "' does not cover year " +
                                    std::to_string(x_year));
                }
                x_value = future_col->at_year(x_year);
            }
            reg_shift[static_cast<std::size_t>(s - 1)] += fit.gamma[k] * x_value;
        }
    }

    Forecast fc = forecast_arima(fit.arima, horizon, level);
    for (int s = 0; s < horizon; ++s) {
        const double shift = reg_shift[static_cast<std::size_t>(s)];
        fc.point[static_cast<std::size_t>(s)] += shift;
        fc.lower[static_cast<std::size_t>(s)] += shift;
        fc.upper[static_cast<std::size_t>(s)] += shift;
    }
    return fc;
}

ExogMatrix auto_scenario(const ExogMatrix& exog, int horizon) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "scenario horizon must be positive");
    }
    std::vector<TimeSeries> future;
    future.reserve(exog.column_count());
    for (const auto& col : exog.columns()) {
        const HoltFit holt = fit_holt(col, PhiMode::Fixed95);
        const Forecast fc = forecast_holt(holt, horizon);
        future.emplace_back(fc.start_year, fc.point, col.label());
    }
    return ExogMatrix::scenario(std::move(future));
}

} // namespace enercast
