#pragma once

#include "enercast/arima.hpp" // Forecast
#include "enercast/series.hpp"

#include <string>

namespace enercast {

struct SvgStyle {
    int width = 860;
    int height = 480;
    std::string title;
    std::string unit_label = "trillion Btu";
    std::string observed_color = "#00868b"; // dark cyan
    std::string forecast_color = "#d62728"; // red
    std::string band_color = "#bdbdbd";     // gray
};

/// Renders history, forecast and the shaded interval band into a standalone
/// SVG document. Output is byte-deterministic for fixed inputs.
std::string render_forecast_svg(const TimeSeries& history, const Forecast& forecast,
                                const SvgStyle& style = {});

} // namespace enercast
