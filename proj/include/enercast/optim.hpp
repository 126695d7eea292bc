#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace enercast {

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct OptimOptions {
    int restarts = 5;          // first start is the supplied point, rest are seeded jitters
    double tol = 1e-10;        // stop when the simplex objective spread falls below this
    int evals_per_param = 500; // per-restart evaluation budget, scaled by dimension
    std::uint64_t seed = 0x5eedULL;
    double initial_step = 0.25;
};

struct OptimResult {
    std::vector<double> x;
    double fx = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead simplex minimization of f from x0. Deterministic for fixed
/// inputs; +inf objective values are handled as ordinary bad points.
OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0, double initial_step,
                        double tol, int max_evals);

/// Multi-start wrapper: runs nelder_mead from x0 and from restarts-1 seeded
/// Gaussian perturbations of it (per-coordinate scale = perturb_scale), keeps
/// the best result. converged is true when any restart converged.
OptimResult multi_start_minimize(const ObjectiveFn& f, const std::vector<double>& x0,
                                 const std::vector<double>& perturb_scale,
                                 const OptimOptions& options);

/// Maps unconstrained reals to partial autocorrelations in
/// (-margin, margin) and through the Durbin-Levinson recursion to the
/// coefficients of a stationary AR polynomial 1 - a1 B - ... - ap B^p.
std::vector<double> pacf_to_ar(const std::vector<double>& partials);
std::vector<double> ar_to_pacf(const std::vector<double>& ar);
std::vector<double> unconstrained_to_ar(const std::vector<double>& z);
std::vector<double> ar_to_unconstrained(const std::vector<double>& ar);

/// Margin keeping partial autocorrelations away from +-1 (and thus
/// polynomial roots away from the unit circle).
inline constexpr double kPacfMargin = 1.0 - 1e-6;

/// Logistic map of an unconstrained real into (lo, hi) and its inverse.
double logistic_to_interval(double z, double lo, double hi);
double interval_to_logistic(double x, double lo, double hi);

} // namespace enercast
