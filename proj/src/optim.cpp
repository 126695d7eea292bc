#include "enercast/optim.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace enercast {

OptimResult nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0, double initial_step,
                        double tol, int max_evals) {
    const std::size_t n = x0.size();
    OptimResult result;
    if (n == 0) {
        result.x = x0;
        result.fx = f(x0);
        result.evaluations = 1;
        result.converged = true;
        return result;
    }

    constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += (x0[i] != 0.0 ? 0.05 * std::abs(x0[i]) : 0.0) + initial_step;
    }

    int evals = 0;
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fvals[i] = f(simplex[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    bool converged = false;
    while (evals < max_evals) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });

        const double best = fvals[order.front()];
        const double worst = fvals[order.back()];
        if (std::isfinite(best) && std::isfinite(worst) && worst - best < tol) {
            converged = true;
            break;
        }

        const std::size_t hi = order.back();
        const std::size_t next_hi = order[n - 1];
        const std::size_t lo = order.front();

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coeff * (simplex[hi][j] - centroid[j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(-reflect);
        double f_reflected = f(reflected);
        ++evals;

        if (f_reflected < fvals[lo]) {
            std::vector<double> expanded = blend(-expand);
            double f_expanded = f(expanded);
            ++evals;
            if (f_expanded < f_reflected) {
                simplex[hi] = std::move(expanded);
                fvals[hi] = f_expanded;
            } else {
                simplex[hi] = std::move(reflected);
                fvals[hi] = f_reflected;
            }
        } else if (f_reflected < fvals[next_hi]) {
            simplex[hi] = std::move(reflected);
            fvals[hi] = f_reflected;
        } else {
            const bool outside = f_reflected < fvals[hi];
            std::vector<double> contracted = blend(outside ? -contract : contract);
            double f_contracted = f(contracted);
            ++evals;
            if (f_contracted < std::min(f_reflected, fvals[hi])) {
                simplex[hi] = std::move(contracted);
                fvals[hi] = f_contracted;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[lo][j] + shrink * (simplex[i][j] - simplex[lo][j]);
                    }
                    fvals[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }

    std::size_t best_idx = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (fvals[i] < fvals[best_idx]) best_idx = i;
    }
    result.x = simplex[best_idx];
    result.fx = fvals[best_idx];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

OptimResult multi_start_minimize(const ObjectiveFn& f, const std::vector<double>& x0,
                                 const std::vector<double>& perturb_scale,
                                 const OptimOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) {
        return nelder_mead(f, x0, options.initial_step, options.tol, 1);
    }
    const int budget = options.evals_per_param * static_cast<int>(n);

    OptimResult best;
    best.fx = std::numeric_limits<double>::infinity();
    bool any_converged = false;

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    for (int restart = 0; restart < options.restarts; ++restart) {
        std::vector<double> start = x0;
        if (restart > 0) {
            for (std::size_t j = 0; j < n; ++j) {
                start[j] += perturb_scale[j] * noise(rng);
            }
        }
        OptimResult r = nelder_mead(f, start, options.initial_step, options.tol, budget);
        any_converged = any_converged || r.converged;
        if (r.fx < best.fx || (restart == 0 && !std::isfinite(best.fx))) {
            int total = best.evaluations + r.evaluations;
            best = std::move(r);
            best.evaluations = total;
        } else {
            best.evaluations += r.evaluations;
        }
    }
    best.converged = any_converged;
    return best;
}

std::vector<double> pacf_to_ar(const std::vector<double>& partials) {
    const std::size_t p = partials.size();
    std::vector<double> ar(partials);
    std::vector<double> work(partials);
    for (std::size_t j = 1; j < p; ++j) {
        const double a = ar[j];
        for (std::size_t k = 0; k < j; ++k) {
            work[k] -= a * ar[j - k - 1];
        }
        for (std::size_t k = 0; k < j; ++k) {
            ar[k] = work[k];
        }
    }
    return ar;
}

std::vector<double> ar_to_pacf(const std::vector<double>& ar) {
    // Inverse Durbin-Levinson: peel levels off from the highest order down.
    std::vector<double> work(ar);
    const std::size_t p = ar.size();
    std::vector<double> partials(p, 0.0);
    for (std::size_t j = p; j-- > 0;) {
        const double a = work[j];
        partials[j] = a;
        if (std::abs(a) >= 1.0) {
            throw Error(ErrorCode::ConstraintViolation,
                        "coefficients lie outside the stationary/invertible region");
        }
        std::vector<double> prev(j, 0.0);
        for (std::size_t k = 0; k < j; ++k) {
            prev[k] = (work[k] + a * work[j - k - 1]) / (1.0 - a * a);
        }
        for (std::size_t k = 0; k < j; ++k) {
            work[k] = prev[k];
        }
    }
    return partials;
}

std::vector<double> unconstrained_to_ar(const std::vector<double>& z) {
    std::vector<double> partials(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        partials[i] = kPacfMargin * std::tanh(z[i]);
    }
    return pacf_to_ar(partials);
}

std::vector<double> ar_to_unconstrained(const std::vector<double>& ar) {
    std::vector<double> partials = ar_to_pacf(ar);
    std::vector<double> z(partials.size());
    for (std::size_t i = 0; i < partials.size(); ++i) {
        z[i] = std::atanh(partials[i] / kPacfMargin);
    }
    return z;
}

double logistic_to_interval(double z, double lo, double hi) {
    return lo + (hi - lo) / (1.0 + std::exp(-z));
}

double interval_to_logistic(double x, double lo, double hi) {
    const double u = (x - lo) / (hi - lo);
    return std::log(u / (1.0 - u));
}

} // namespace enercast
