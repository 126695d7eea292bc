#include "enercast/series.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace enercast {

TimeSeries::TimeSeries(int start_year, std::vector<double> values, std::string label)
    : start_year_(start_year), values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) {
        throw Error(ErrorCode::Argument, "time series '" + label_ + "' must hold at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorCode::Argument,
                        "time series '" + label_ + "' has a non-finite value at year " +
                            std::to_string(start_year_ + static_cast<int>(i)));
        }
    }
}

double TimeSeries::at_year(int year) const {
    if (!covers_year(year)) {
        throw Error(ErrorCode::Argument,
                    "year " + std::to_string(year) + " outside series '" + label_ + "' range " +
                        std::to_string(start_year_) + "-" + std::to_string(end_year()));
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

TimeSeries TimeSeries::slice_years(int from_year, int to_year) const {
    const int lo = std::max(from_year, start_year_);
    const int hi = std::min(to_year, end_year());
    if (lo > hi) {
        throw Error(ErrorCode::Argument,
                    "empty slice " + std::to_string(from_year) + "-" + std::to_string(to_year) +
                        " of series '" + label_ + "'");
    }
    auto first = values_.begin() + (lo - start_year_);
    auto last = values_.begin() + (hi - start_year_) + 1;
    return {lo, std::vector<double>(first, last), label_};
}

TimeSeries difference(const TimeSeries& series, int d) {
    if (d < 0) {
        throw Error(ErrorCode::Argument, "differencing order must be non-negative");
    }
    if (series.size() <= static_cast<std::size_t>(d)) {
        throw Error(ErrorCode::InsufficientData,
                    "series '" + series.label() + "' too short (" + std::to_string(series.size()) +
                        ") to difference " + std::to_string(d) + " times");
    }
    std::vector<double> current = series.values();
    for (int round = 0; round < d; ++round) {
        std::vector<double> next(current.size() - 1);
        for (std::size_t i = 0; i + 1 < current.size(); ++i) {
            next[i] = current[i + 1] - current[i];
        }
        current = std::move(next);
    }
    return {series.start_year() + d, std::move(current), series.label()};
}

std::vector<double> difference_pivots(const TimeSeries& series, int d) {
    std::vector<double> pivots;
    pivots.reserve(static_cast<std::size_t>(d));
    TimeSeries level = series;
    for (int k = 0; k < d; ++k) {
        pivots.push_back(level.values().front());
        level = difference(level, 1);
    }
    return pivots;
}

TimeSeries integrate(const TimeSeries& differenced, const std::vector<double>& pivots, int d) {
    if (d < 0) {
        throw Error(ErrorCode::Argument, "integration order must be non-negative");
    }
    if (pivots.size() != static_cast<std::size_t>(d)) {
        throw Error(ErrorCode::Argument,
                    "integrate needs exactly " + std::to_string(d) + " pivots, got " +
                        std::to_string(pivots.size()));
    }
    if (d == 0) {
        return differenced;
    }
    // Rebuild the cascade from the deepest level up, prepending each level's
    // seed value before cumulating.
    std::vector<double> current = differenced.values();
    for (int k = d - 1; k >= 0; --k) {
        std::vector<double> level(current.size() + 1);
        level[0] = pivots[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < current.size(); ++i) {
            level[i + 1] = level[i] + current[i];
        }
        current = std::move(level);
    }
    return {differenced.start_year() - d, std::move(current), differenced.label()};
}

std::vector<double> difference_tail(const TimeSeries& series, int d) {
    std::vector<double> tail;
    tail.reserve(static_cast<std::size_t>(d));
    TimeSeries level = series;
    for (int k = 0; k < d; ++k) {
        tail.push_back(level.values().back());
        level = difference(level, 1);
    }
    return tail;
}

std::vector<double> integrate_from_tail(const std::vector<double>& future_diffs,
                                        std::vector<double> tail_state) {
    std::vector<double> out;
    out.reserve(future_diffs.size());
    const std::size_t d = tail_state.size();
    for (double diff : future_diffs) {
        double increment = diff;
        for (std::size_t k = d; k-- > 0;) {
            tail_state[k] += increment;
            increment = tail_state[k];
        }
        out.push_back(d == 0 ? diff : tail_state[0]);
    }
    return out;
}

std::vector<double> sample_acf(const TimeSeries& series, int max_lag) {
    const auto& x = series.values();
    const std::size_t n = x.size();
    if (max_lag < 1) {
        throw Error(ErrorCode::Argument, "max_lag must be positive");
    }
    if (n <= static_cast<std::size_t>(max_lag)) {
        throw Error(ErrorCode::InsufficientData,
                    "series length " + std::to_string(n) + " must exceed max_lag " +
                        std::to_string(max_lag));
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double c0 = 0.0;
    for (double v : x) {
        c0 += (v - mean) * (v - mean);
    }
    if (c0 == 0.0) {
        throw Error(ErrorCode::DegenerateSeries,
                    "series '" + series.label() + "' is constant; autocorrelation undefined");
    }
    std::vector<double> acf(static_cast<std::size_t>(max_lag));
    for (int lag = 1; lag <= max_lag; ++lag) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t) {
            ck += (x[t] - mean) * (x[t - static_cast<std::size_t>(lag)] - mean);
        }
        acf[static_cast<std::size_t>(lag - 1)] = ck / c0;
    }
    return acf;
}

std::vector<TimeSeries> align_panel(const std::vector<TimeSeries>& series_list) {
    if (series_list.empty()) {
        throw Error(ErrorCode::Argument, "align_panel needs at least one series");
    }
    int lo = series_list.front().start_year();
    int hi = series_list.front().end_year();
    for (const auto& s : series_list) {
        lo = std::max(lo, s.start_year());
        hi = std::min(hi, s.end_year());
    }
    if (lo > hi) {
        std::string names;
        for (const auto& s : series_list) {
            if (!names.empty()) names += ", ";
            names += s.label().empty() ? "<unnamed>" : s.label();
        }
        throw Error(ErrorCode::NoOverlap, "series year ranges do not overlap: " + names);
    }
    std::vector<TimeSeries> aligned;
    aligned.reserve(series_list.size());
    for (const auto& s : series_list) {
        aligned.push_back(s.slice_years(lo, hi));
    }
    return aligned;
}

} // namespace enercast
