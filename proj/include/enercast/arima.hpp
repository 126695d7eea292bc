#pragma once

#include "enercast/optim.hpp"
#include "enercast/series.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace enercast {

/// Model order (p, d, q). The constant term defaults to "included iff d == 0",
/// matching the convention of the R forecast family.
struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    std::optional<bool> include_constant{}; // unset -> d == 0

    bool has_constant() const { return include_constant.value_or(d == 0); }
    int max_order() const { return p > q ? p : q; }
    std::string to_string() const;
};

void validate_spec(const ArimaSpec& spec);

/// Coefficients on the natural scale. The model is
///   y_t = intercept + sum_i ar[i] y_{t-i} + e_t + sum_j ma[j] e_{t-j}
/// on the d-times differenced series.
struct ArimaParams {
    double intercept = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
};

struct FitOptions {
    OptimOptions optim{};
    int exog_lag = 0; // uniform lag applied by the exogenous-regression path
};

struct ArimaFit {
    ArimaSpec spec;
    double intercept = 0.0;
    std::vector<double> ar_coeffs;
    std::vector<double> ma_coeffs;
    double sigma2 = 0.0;
    std::vector<double> residuals; // one per observation entering the objective
    double loglik = 0.0;
    int n_effective = 0;
    /// Last max(p,q)+d original-scale observations, enough to restart the
    /// forecast recursion.
    std::vector<double> train_tail;
    int train_end_year = 0;
    bool sigma_floored = false; // variance hit the degeneracy floor
    double aicc = 0.0;

    int param_count() const; // AR + MA + constant + 1 for sigma^2
};

struct Forecast {
    int start_year = 0;
    std::vector<double> point;
    std::vector<double> lower;
    std::vector<double> upper;
    double level = 0.95;
};

/// Conditional-sum-of-squares Gaussian log-likelihood on an already
/// differenced series. Residuals follow
///   e_t = y_t - intercept - sum ar_i y_{t-i} - sum ma_j e_{t-j}
/// with presample errors fixed at zero and t starting after the first p
/// observations. Throws when the coefficients leave the stationary or
/// invertible region.
double css_loglik(const TimeSeries& differenced, const ArimaSpec& spec, const ArimaParams& params);

ArimaFit fit_arima(const TimeSeries& series, const ArimaSpec& spec, const FitOptions& options = {});

/// MA(infinity) weights psi_0..psi_{horizon-1} of the ARMA part (differencing
/// handled separately by the forecast variance).
std::vector<double> psi_weights(const ArimaFit& fit, int horizon);

/// Psi weights of the full ARIMA representation: the AR polynomial is
/// multiplied by (1-B)^d before the recursion, so cumulative squared sums
/// give h-step forecast variances on the original scale.
std::vector<double> psi_weights_integrated(const ArimaFit& fit, int horizon);

Forecast forecast_arima(const ArimaFit& fit, int horizon, double level = 0.95);

TimeSeries simulate_arima(const ArimaSpec& spec, const ArimaParams& params, int n,
                          std::uint64_t seed, double sigma2 = 1.0, int start_year = 1960);

/// Small-sample corrected Akaike criterion. Returns +infinity when the
/// correction denominator is not positive, so the candidate drops out of any
/// ranking instead of aborting it.
double aicc(double loglik, int k, int n);

namespace detail {
/// Residual recursion shared by the likelihood, the fitter and the ARIMAX
/// objective; no region validation. Returns the residuals for t > p.
std::vector<double> css_residuals(const std::vector<double>& y, const ArimaParams& params, int p,
                                  int q);
double css_loglik_unchecked(const std::vector<double>& y, const ArimaParams& params, int p, int q,
                            double sigma2_floor);
double sigma2_floor_for(const std::vector<double>& differenced);
/// Derives residuals, variance, likelihood and the forecasting tail for fixed
/// natural-scale coefficients. extra_params counts regression coefficients
/// estimated jointly (they enter the AICc parameter count).
ArimaFit assemble_arima_fit(const TimeSeries& series, const ArimaSpec& spec,
                            const ArimaParams& natural, double sigma2_floor,
                            std::size_t extra_params = 0);
} // namespace detail

} // namespace enercast
