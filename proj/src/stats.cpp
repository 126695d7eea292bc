#include "enercast/stats.hpp"

#include "enercast/errors.hpp"

#include <cmath>

namespace enercast {

namespace {

// Acklam's inverse normal CDF approximation, relative error < 1.15e-9.
double acklam_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF tightens the tails well past 1e-8.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

} // namespace

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw Error(ErrorCode::Argument, "normal quantile needs a probability in (0,1)");
    }
    return acklam_quantile(prob);
}

double normal_interval_z(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::Argument, "confidence level must lie in (0,1)");
    }
    if (level == 0.80) return 1.281552;
    if (level == 0.90) return 1.644854;
    if (level == 0.95) return 1.959964;
    if (level == 0.99) return 2.575829;
    return normal_quantile(1.0 - (1.0 - level) / 2.0);
}

double sample_mean(const double* data, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += data[i];
    return n > 0 ? sum / n : 0.0;
}

double sample_variance(const double* data, int n) {
    if (n < 2) return 0.0;
    const double mean = sample_mean(data, n);
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        ss += (data[i] - mean) * (data[i] - mean);
    }
    return ss / (n - 1);
}

} // namespace enercast
