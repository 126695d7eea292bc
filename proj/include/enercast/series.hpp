#pragma once

#include <string>
#include <vector>

namespace enercast {

/// Annual time series: a start year plus a gap-free run of finite values.
/// Missing or non-finite observations are rejected at construction; upstream
/// ingestion must trim or fail instead of passing sentinels through.
class TimeSeries {
public:
    TimeSeries(int start_year, std::vector<double> values, std::string label = "");

    int start_year() const { return start_year_; }
    int end_year() const { return start_year_ + static_cast<int>(values_.size()) - 1; }
    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double back() const { return values_.back(); }

    /// Year of observation i is start_year + i.
    int year_at(std::size_t i) const { return start_year_ + static_cast<int>(i); }
    bool covers_year(int year) const { return year >= start_year_ && year <= end_year(); }
    double at_year(int year) const;

    /// Copy restricted to [from_year, to_year] inclusive; errors if empty.
    TimeSeries slice_years(int from_year, int to_year) const;

    TimeSeries with_label(std::string label) const { return {start_year_, values_, std::move(label)}; }

private:
    int start_year_;
    std::vector<double> values_;
    std::string label_;
};

/// d-th order forward difference. Length shrinks by d, start year advances by d.
TimeSeries difference(const TimeSeries& series, int d);

/// Seed values needed by integrate() to rebuild a series from its d-th
/// difference: the leading value of each cascade level 0..d-1, i.e.
/// pivots[k] = first value of difference(series, k).
std::vector<double> difference_pivots(const TimeSeries& series, int d);

/// Exact inverse of difference(): rebuilds the full original series from its
/// d-th difference and the pivots, so that
///   integrate(difference(x, d), difference_pivots(x, d), d) == x
/// holds exactly and differencing the result d times reproduces the input.
TimeSeries integrate(const TimeSeries& differenced, const std::vector<double>& pivots, int d);

/// Closing value of each cascade level 0..d-1 (the state a forecast of the
/// differenced series continues from).
std::vector<double> difference_tail(const TimeSeries& series, int d);

/// Anchor-at-end integration: consumes future d-th differences and the tail
/// cascade state, emitting the implied future level values.
std::vector<double> integrate_from_tail(const std::vector<double>& future_diffs,
                                        std::vector<double> tail_state);

/// Biased sample autocorrelations at lags 1..max_lag (lag-0 autocovariance in
/// the denominator). Constant input is a degenerate-series error.
std::vector<double> sample_acf(const TimeSeries& series, int max_lag);

/// Trim every series to the common year overlap. Errors when the overlap is
/// empty; a single series passes through unchanged.
std::vector<TimeSeries> align_panel(const std::vector<TimeSeries>& series_list);

} // namespace enercast
