#include "enercast/arima.hpp"

#include "enercast/errors.hpp"
#include "enercast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace enercast {

namespace {

constexpr int kMaxOrder = 8;
constexpr int kMaxDiff = 2;
constexpr int kMinEffectiveSample = 10;

std::vector<double> negated(std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
}

// Throws unless both polynomial blocks sit inside the admissible region with
// the configured margin.
void validate_region(const ArimaParams& params) {
    auto check = [](const std::vector<double>& block, const char* what) {
        if (block.empty()) return;
        std::vector<double> partials = ar_to_pacf(block); // throws when |pacf| >= 1
        for (double r : partials) {
            if (std::abs(r) > kPacfMargin) {
                throw Error(ErrorCode::ConstraintViolation,
                            std::string(what) + " coefficients violate the unit-circle margin");
            }
        }
    };
    check(params.ar, "AR");
    check(negated(params.ma), "MA"); // 1 + sum ma_j B^j == 1 - sum (-ma_j) B^j
}

double loglik_from_sse(double sse, int n_eff, double sigma2_floor, double* sigma2_out = nullptr,
                       bool* floored_out = nullptr) {
    double sigma2 = sse / n_eff;
    bool floored = false;
    if (sigma2 < sigma2_floor) {
        sigma2 = sigma2_floor;
        floored = true;
    }
    if (sigma2_out) *sigma2_out = sigma2;
    if (floored_out) *floored_out = floored;
    return -0.5 * n_eff * (std::log(2.0 * M_PI) + std::log(sigma2) + 1.0);
}

} // namespace

std::string ArimaSpec::to_string() const {
    std::ostringstream os;
    os << "(" << p << "," << d << "," << q << ")";
    return os.str();
}

void validate_spec(const ArimaSpec& spec) {
    if (spec.p < 0 || spec.q < 0 || spec.d < 0) {
        throw Error(ErrorCode::Argument, "ARIMA orders must be non-negative");
    }
    if (spec.p > kMaxOrder || spec.q > kMaxOrder) {
        throw Error(ErrorCode::Argument,
                    "AR/MA order exceeds the search-space bound of " + std::to_string(kMaxOrder));
    }
    if (spec.d > kMaxDiff) {
        throw Error(ErrorCode::Argument,
                    "differencing order exceeds the bound of " + std::to_string(kMaxDiff));
    }
}

int ArimaFit::param_count() const {
    return spec.p + spec.q + (spec.has_constant() ? 1 : 0) + 1;
}

namespace detail {

std::vector<double> css_residuals(const std::vector<double>& y, const ArimaParams& params, int p,
                                  int q) {
    const int n = static_cast<int>(y.size());
    std::vector<double> resid;
    resid.reserve(static_cast<std::size_t>(std::max(0, n - p)));
    // e indexed like y; presample (t < p) entries stay zero.
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (int t = p; t < n; ++t) {
        double value = y[static_cast<std::size_t>(t)] - params.intercept;
        for (int i = 1; i <= p; ++i) {
            value -= params.ar[static_cast<std::size_t>(i - 1)] * y[static_cast<std::size_t>(t - i)];
        }
        for (int j = 1; j <= q && t - j >= 0; ++j) {
            value -= params.ma[static_cast<std::size_t>(j - 1)] * e[static_cast<std::size_t>(t - j)];
        }
        e[static_cast<std::size_t>(t)] = value;
        resid.push_back(value);
    }
    return resid;
}

double css_loglik_unchecked(const std::vector<double>& y, const ArimaParams& params, int p, int q,
                            double sigma2_floor) {
    const std::vector<double> resid = css_residuals(y, params, p, q);
    double sse = 0.0;
    for (double r : resid) sse += r * r;
    return loglik_from_sse(sse, static_cast<int>(resid.size()), sigma2_floor);
}

double sigma2_floor_for(const std::vector<double>& differenced) {
    const double var = sample_variance(differenced.data(), static_cast<int>(differenced.size()));
    return 1e-12 * var;
}

ArimaFit assemble_arima_fit(const TimeSeries& series, const ArimaSpec& spec,
                            const ArimaParams& natural, double sigma2_floor,
                            std::size_t extra_params) {
    const TimeSeries diffed = difference(series, spec.d);

    ArimaFit fit;
    fit.spec = spec;
    fit.intercept = natural.intercept;
    fit.ar_coeffs = natural.ar;
    fit.ma_coeffs = natural.ma;
    fit.residuals = css_residuals(diffed.values(), natural, spec.p, spec.q);
    double sse = 0.0;
    for (double r : fit.residuals) sse += r * r;
    fit.n_effective = static_cast<int>(fit.residuals.size());
    fit.loglik =
        loglik_from_sse(sse, fit.n_effective, sigma2_floor, &fit.sigma2, &fit.sigma_floored);
    fit.aicc = aicc(fit.loglik, fit.param_count() + static_cast<int>(extra_params), fit.n_effective);

    const int tail_len = std::max(spec.max_order() + spec.d, spec.d + 1);
    const auto& orig = series.values();
    fit.train_tail.assign(orig.end() - std::min<std::size_t>(orig.size(),
                                                             static_cast<std::size_t>(tail_len)),
                          orig.end());
    fit.train_end_year = series.end_year();
    return fit;
}

} // namespace detail

double css_loglik(const TimeSeries& differenced, const ArimaSpec& spec, const ArimaParams& params) {
    validate_spec(spec);
    if (static_cast<int>(params.ar.size()) != spec.p || static_cast<int>(params.ma.size()) != spec.q) {
        throw Error(ErrorCode::Argument, "coefficient counts do not match the spec orders");
    }
    if (static_cast<int>(differenced.size()) <= spec.p) {
        throw Error(ErrorCode::InsufficientData, "series shorter than the AR order");
    }
    validate_region(params);
    return detail::css_loglik_unchecked(differenced.values(), params, spec.p, spec.q,
                                        detail::sigma2_floor_for(differenced.values()));
}

ArimaFit fit_arima(const TimeSeries& series, const ArimaSpec& spec, const FitOptions& options) {
    validate_spec(spec);
    const int min_len = spec.p + spec.q + spec.d + kMinEffectiveSample;
    if (static_cast<int>(series.size()) < min_len) {
        throw Error(ErrorCode::InsufficientData,
                    "series '" + series.label() + "' has " + std::to_string(series.size()) +
                        " observations; ARIMA" + spec.to_string() + " needs at least " +
                        std::to_string(min_len));
    }

    const TimeSeries diffed = difference(series, spec.d);
    const std::vector<double>& y = diffed.values();
    const int n = static_cast<int>(y.size());
    const double var = sample_variance(y.data(), n);
    if (var == 0.0) {
        throw Error(ErrorCode::DegenerateSeries,
                    "differenced series '" + series.label() + "' is constant");
    }
    const double sigma2_floor = detail::sigma2_floor_for(y);

    const bool constant = spec.has_constant();
    const double mean = constant ? sample_mean(y.data(), n) : 0.0;
    std::vector<double> w(y);
    if (constant) {
        for (double& v : w) v -= mean;
    }

    const int p = spec.p;
    const int q = spec.q;
    const int dim = p + q + (constant ? 1 : 0);

    // Parameter vector: [z_ar, z_ma, centered intercept]. Zero is the natural
    // origin (no ARMA structure, intercept at the sample mean).
    auto decode = [&](const std::vector<double>& v) {
        ArimaParams params;
        params.ar = unconstrained_to_ar(std::vector<double>(v.begin(), v.begin() + p));
        params.ma = negated(unconstrained_to_ar(std::vector<double>(v.begin() + p, v.begin() + p + q)));
        params.intercept = constant ? v[static_cast<std::size_t>(p + q)] : 0.0;
        return params;
    };

    ArimaParams best_params;
    bool converged = true;
    if (dim > 0) {
        auto objective = [&](const std::vector<double>& v) {
            const ArimaParams params = decode(v);
            return -detail::css_loglik_unchecked(w, params, p, q, sigma2_floor);
        };

        std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
        std::vector<double> scale(static_cast<std::size_t>(dim), 0.4);
        if (constant) {
            scale.back() = 0.4 * std::sqrt(var);
        }
        OptimResult result;
        if (p == 0 && q == 0) {
            // Pure-constant model: the least-squares optimum is the mean, no
            // search needed.
            result.x = x0;
            result.converged = true;
        } else {
            result = multi_start_minimize(objective, x0, scale, options.optim);
        }
        converged = result.converged;
        best_params = decode(result.x);
        if (!converged) {
            std::ostringstream os;
            os << "ARIMA" << spec.to_string() << " optimizer failed to converge on '"
               << series.label() << "'; best objective " << -objective(result.x);
            throw Error(ErrorCode::Convergence, os.str());
        }
    }

    // Report on the natural scale: shift the centered intercept back.
    double ar_sum = 0.0;
    for (double a : best_params.ar) ar_sum += a;
    ArimaParams natural = best_params;
    if (constant) {
        natural.intercept = best_params.intercept + mean * (1.0 - ar_sum);
    }
    return detail::assemble_arima_fit(series, spec, natural, sigma2_floor);
}

namespace {

std::vector<double> psi_recursion(const std::vector<double>& ar, const std::vector<double>& ma,
                                  int horizon) {
    const int p = static_cast<int>(ar.size());
    const int q = static_cast<int>(ma.size());
    std::vector<double> psi(static_cast<std::size_t>(horizon), 0.0);
    if (horizon <= 0) return psi;
    psi[0] = 1.0;
    for (int k = 1; k < horizon; ++k) {
        double value = k <= q ? ma[static_cast<std::size_t>(k - 1)] : 0.0;
        for (int i = 1; i <= std::min(k, p); ++i) {
            value += ar[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(k - i)];
        }
        psi[static_cast<std::size_t>(k)] = value;
    }
    return psi;
}

// Coefficients a_1..a_{p+d} of the expanded polynomial
// (1 - sum ar_i B^i)(1-B)^d = 1 - sum a_i B^i.
std::vector<double> integrated_ar(const std::vector<double>& ar, int d) {
    std::vector<double> poly;
    poly.reserve(ar.size() + static_cast<std::size_t>(d) + 1);
    poly.push_back(1.0);
    for (double a : ar) poly.push_back(-a);
    for (int round = 0; round < d; ++round) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i];
        }
        poly = std::move(next);
    }
    std::vector<double> a(poly.size() - 1);
    for (std::size_t i = 1; i < poly.size(); ++i) {
        a[i - 1] = -poly[i];
    }
    return a;
}

} // namespace

std::vector<double> psi_weights(const ArimaFit& fit, int horizon) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "psi horizon must be positive");
    }
    return psi_recursion(fit.ar_coeffs, fit.ma_coeffs, horizon);
}

std::vector<double> psi_weights_integrated(const ArimaFit& fit, int horizon) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "psi horizon must be positive");
    }
    return psi_recursion(integrated_ar(fit.ar_coeffs, fit.spec.d), fit.ma_coeffs, horizon);
}

Forecast forecast_arima(const ArimaFit& fit, int horizon, double level) {
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "forecast horizon must be positive");
    }
    const double z = normal_interval_z(level);
    const int p = fit.spec.p;
    const int q = fit.spec.q;
    const int d = fit.spec.d;

    const TimeSeries tail_series(fit.train_end_year - static_cast<int>(fit.train_tail.size()) + 1,
                                 fit.train_tail, "tail");
    // History of the differenced process (last max(p,q) values) plus the
    // residual tail drive the point recursion; the cascade tail anchors the
    // integration back to levels.
    std::vector<double> diffed_hist = difference(tail_series, d).values();
    std::vector<double> resid_hist(fit.residuals.end() -
                                       std::min<std::size_t>(fit.residuals.size(),
                                                             static_cast<std::size_t>(q)),
                                   fit.residuals.end());
    const std::vector<double> cascade_tail = difference_tail(tail_series, d);

    std::vector<double> diff_points;
    diff_points.reserve(static_cast<std::size_t>(horizon));
    const int hist = static_cast<int>(diffed_hist.size());
    const int n_resid = static_cast<int>(resid_hist.size());
    for (int h = 1; h <= horizon; ++h) {
        double value = fit.intercept;
        for (int i = 1; i <= p; ++i) {
            const int idx = h - i; // index into the forecast block; negative -> history
            const double y_past = idx >= 1
                                      ? diff_points[static_cast<std::size_t>(idx - 1)]
                                      : diffed_hist[static_cast<std::size_t>(hist + idx - 1)];
            value += fit.ar_coeffs[static_cast<std::size_t>(i - 1)] * y_past;
        }
        for (int j = h; j <= q; ++j) {
            const int idx = n_resid + h - j - 1;
            if (idx >= 0) {
                value += fit.ma_coeffs[static_cast<std::size_t>(j - 1)] *
                         resid_hist[static_cast<std::size_t>(idx)];
            }
        }
        diff_points.push_back(value);
    }

    Forecast fc;
    fc.start_year = fit.train_end_year + 1;
    fc.level = level;
    fc.point = d == 0 ? diff_points : integrate_from_tail(diff_points, cascade_tail);

    const std::vector<double> psi = psi_weights_integrated(fit, horizon);
    double cum = 0.0;
    fc.lower.reserve(static_cast<std::size_t>(horizon));
    fc.upper.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        cum += psi[static_cast<std::size_t>(h)] * psi[static_cast<std::size_t>(h)];
        const double half_width = z * std::sqrt(fit.sigma2 * cum);
        fc.lower.push_back(fc.point[static_cast<std::size_t>(h)] - half_width);
        fc.upper.push_back(fc.point[static_cast<std::size_t>(h)] + half_width);
    }
    return fc;
}

TimeSeries simulate_arima(const ArimaSpec& spec, const ArimaParams& params, int n,
                          std::uint64_t seed, double sigma2, int start_year) {
    validate_spec(spec);
    if (n < 1) {
        throw Error(ErrorCode::Argument, "simulation length must be positive");
    }
    if (sigma2 < 0.0) {
        throw Error(ErrorCode::Argument, "innovation variance must be non-negative");
    }
    if (static_cast<int>(params.ar.size()) != spec.p || static_cast<int>(params.ma.size()) != spec.q) {
        throw Error(ErrorCode::Argument, "coefficient counts do not match the spec orders");
    }
    validate_region(params);

    const int p = spec.p;
    const int q = spec.q;
    const int burn = 200 + 10 * spec.max_order();
    const int total = burn + n;
    const double sd = std::sqrt(sigma2);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> e(static_cast<std::size_t>(total));
    for (double& v : e) v = sd * gauss(rng);

    std::vector<double> y(static_cast<std::size_t>(total), 0.0);
    for (int t = 0; t < total; ++t) {
        double value = params.intercept + e[static_cast<std::size_t>(t)];
        for (int i = 1; i <= p && t - i >= 0; ++i) {
            value += params.ar[static_cast<std::size_t>(i - 1)] * y[static_cast<std::size_t>(t - i)];
        }
        for (int j = 1; j <= q && t - j >= 0; ++j) {
            value += params.ma[static_cast<std::size_t>(j - 1)] * e[static_cast<std::size_t>(t - j)];
        }
        y[static_cast<std::size_t>(t)] = value;
    }

    std::vector<double> out(y.end() - n, y.end());
    for (int round = 0; round < spec.d; ++round) {
        double acc = 0.0;
        for (double& v : out) {
            acc += v;
            v = acc;
        }
    }
    return {start_year, std::move(out), "sim"};
}

double aicc(double loglik, int k, int n) {
    const double aic = -2.0 * loglik + 2.0 * k;
    if (n <= k + 1) {
        return std::numeric_limits<double>::infinity();
    }
    return aic + (2.0 * k * (k + 1)) / (n - k - 1);
}

} // namespace enercast
