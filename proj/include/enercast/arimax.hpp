#pragma once

#include "enercast/arima.hpp"
#include "enercast/series.hpp"

#include <string>
#include <vector>

namespace enercast {

/// Named exogenous predictor columns, aligned to a common year range at
/// construction. Constant or mutually collinear columns are rejected (rank of
/// the centered Gram matrix, tolerance 1e-8).
class ExogMatrix {
public:
    explicit ExogMatrix(std::vector<TimeSeries> columns);

    /// Scenario matrices are lookup tables for future paths, not regression
    /// designs; they skip the identifiability checks (a damped forecast may
    /// legitimately be flat).
    static ExogMatrix scenario(std::vector<TimeSeries> columns);

    const std::vector<TimeSeries>& columns() const { return columns_; }
    std::size_t column_count() const { return columns_.size(); }
    int start_year() const { return columns_.front().start_year(); }
    int end_year() const { return columns_.front().end_year(); }
    std::vector<std::string> names() const;
    const TimeSeries* find(const std::string& name) const;

private:
    struct ScenarioTag {};
    ExogMatrix(std::vector<TimeSeries> columns, ScenarioTag);

    std::vector<TimeSeries> columns_;
};

struct ArimaxFit {
    ArimaFit arima;              // error-process fit (residual series y - X gamma)
    std::vector<double> gamma;   // one regression coefficient per column
    std::vector<std::string> exog_names;
    int exog_lag = 0;
    /// Trailing training rows of each exogenous column (levels), kept so
    /// forecasting can difference and lag across the training boundary.
    std::vector<std::vector<double>> exog_tail;
    int exog_tail_end_year = 0;
};

/// Joint estimation of the regression coefficients and the ARIMA error
/// structure by the same conditional-sum-of-squares objective: y and every
/// exogenous column are differenced d times and the ARMA recursion runs on
/// y_diff - X_diff gamma. With exog_lag = L > 0 column values are shifted so
/// X_{t-L} explains y_t.
ArimaxFit fit_arimax(const TimeSeries& series, const ExogMatrix& exog, const ArimaSpec& spec,
                     int exog_lag = 0, const FitOptions& options = {});

/// Regression point path plus the ARIMA error forecast; intervals come from
/// the error process alone. future_exog must supply every training column for
/// every horizon year (after the lag shift).
Forecast forecast_arimax(const ArimaxFit& fit, const ExogMatrix& future_exog, int horizon,
                         double level = 0.95);

/// Fallback future exogenous paths: Holt damped-trend point forecasts
/// (phi = 0.95) of each column.
ExogMatrix auto_scenario(const ExogMatrix& exog, int horizon);

} // namespace enercast
