#pragma once

namespace enercast {

/// Two-sided normal quantile for a confidence level in (0, 1):
/// z(level) = Phi^-1(1 - (1 - level) / 2). The common levels 0.80, 0.90,
/// 0.95, 0.99 come from a fixed table; anything else goes through a rational
/// approximation of the inverse normal CDF (|error| < 1e-8).
double normal_interval_z(double level);

/// Inverse standard normal CDF (Acklam's rational approximation plus one
/// Halley refinement step).
double normal_quantile(double prob);

double sample_mean(const double* data, int n);
double sample_variance(const double* data, int n); // denominator n-1

} // namespace enercast
