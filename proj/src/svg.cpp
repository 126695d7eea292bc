#include "enercast/svg.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace enercast {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Round limits outward to a "nice" step so axis labels stay readable.
double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

} // namespace

std::string render_forecast_svg(const TimeSeries& history, const Forecast& forecast,
                                const SvgStyle& style) {
    if (forecast.point.empty()) {
        throw Error(ErrorCode::Argument, "cannot render an empty forecast");
    }

    const int margin_l = 76, margin_r = 20, margin_t = 36, margin_b = 46;
    const double plot_w = style.width - margin_l - margin_r;
    const double plot_h = style.height - margin_t - margin_b;

    const int year_lo = history.start_year();
    const int year_hi = forecast.start_year + static_cast<int>(forecast.point.size()) - 1;

    double v_lo = history.values().front();
    double v_hi = v_lo;
    for (double v : history.values()) {
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
    }
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        v_lo = std::min({v_lo, forecast.lower[i]});
        v_hi = std::max({v_hi, forecast.upper[i]});
    }
    if (v_hi == v_lo) {
        v_hi += 1.0;
        v_lo -= 1.0;
    }
    const double pad = 0.05 * (v_hi - v_lo);
    v_lo -= pad;
    v_hi += pad;

    auto x_of = [&](double year) {
        return margin_l + plot_w * (year - year_lo) / std::max(1, year_hi - year_lo);
    };
    auto y_of = [&](double v) { return margin_t + plot_h * (1.0 - (v - v_lo) / (v_hi - v_lo)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\""
        << style.height << "\" viewBox=\"0 0 " << style.width << " " << style.height << "\">\n";
    svg << "<rect width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"white\"/>\n";

    if (!style.title.empty()) {
        svg << "<text x=\"" << style.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << style.title << "</text>\n";
    }

    // Gridlines and axis labels.
    const double step = nice_step(v_hi - v_lo);
    const double first_tick = std::ceil(v_lo / step) * step;
    for (double tick = first_tick; tick <= v_hi + 1e-9; tick += step) {
        const double y = y_of(tick);
        svg << "<line x1=\"" << margin_l << "\" y1=\"" << fmt(y) << "\" x2=\""
            << style.width - margin_r << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#e6e6e6\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << margin_l - 8 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(tick)
            << "</text>\n";
    }
    const int year_step = std::max(1, (year_hi - year_lo) / 8);
    for (int year = year_lo; year <= year_hi; year += year_step) {
        const double x = x_of(year);
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << style.height - margin_b + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << year
            << "</text>\n";
    }
    svg << "<text x=\"16\" y=\"" << margin_t + plot_h / 2 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
        << margin_t + plot_h / 2 << ")\">" << style.unit_label << "</text>\n";
    svg << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << style.height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">year</text>\n";

    // Interval band: upper path forward, lower path back.
    svg << "<polygon fill=\"" << style.band_color << "\" fill-opacity=\"0.55\" stroke=\"none\" "
        << "points=\"";
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        const int year = forecast.start_year + static_cast<int>(i);
        svg << fmt(x_of(year)) << ',' << fmt(y_of(forecast.upper[i])) << ' ';
    }
    for (std::size_t i = forecast.point.size(); i-- > 0;) {
        const int year = forecast.start_year + static_cast<int>(i);
        svg << fmt(x_of(year)) << ',' << fmt(y_of(forecast.lower[i]));
        if (i > 0) svg << ' ';
    }
    svg << "\"/>\n";

    // Observed series.
    svg << "<polyline fill=\"none\" stroke=\"" << style.observed_color
        << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (i > 0) svg << ' ';
        svg << fmt(x_of(history.year_at(i))) << ',' << fmt(y_of(history[i]));
    }
    svg << "\"/>\n";

    // Forecast, connected to the last observation.
    svg << "<polyline fill=\"none\" stroke=\"" << style.forecast_color
        << "\" stroke-width=\"1.6\" points=\"";
    svg << fmt(x_of(history.end_year())) << ',' << fmt(y_of(history.back()));
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        const int year = forecast.start_year + static_cast<int>(i);
        svg << ' ' << fmt(x_of(year)) << ',' << fmt(y_of(forecast.point[i]));
    }
    svg << "\"/>\n";

    // Legend.
    const int lx = margin_l + 12, ly = margin_t + 10;
    svg << "<rect x=\"" << lx - 6 << "\" y=\"" << ly - 12 << "\" width=\"150\" height=\"52\" "
        << "fill=\"white\" fill-opacity=\"0.8\" stroke=\"#cccccc\"/>\n";
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 22 << "\" y2=\"" << ly
        << "\" stroke=\"" << style.observed_color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">observed</text>\n";
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly + 16 << "\" x2=\"" << lx + 22 << "\" y2=\""
        << ly + 16 << "\" stroke=\"" << style.forecast_color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 20
        << "\" font-family=\"sans-serif\" font-size=\"11\">forecast</text>\n";
    svg << "<rect x=\"" << lx << "\" y=\"" << ly + 26 << "\" width=\"22\" height=\"10\" fill=\""
        << style.band_color << "\" fill-opacity=\"0.55\"/>\n";
    char pct[16];
    std::snprintf(pct, sizeof(pct), "%g%%", forecast.level * 100.0);
    svg << "<text x=\"" << lx + 28 << "\" y=\"" << ly + 35
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << pct << " interval</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

} // namespace enercast
