// Command-line front end: ingest/validate SEDS data, run order selection,
// fit and forecast single models, run the full model suite, render charts.

#include "enercast/errors.hpp"
#include "enercast/report.hpp"
#include "enercast/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace {

using namespace enercast;

struct CliOverrides {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> entries;
};

void add_config_flags(CLI::App* cmd, CliOverrides& overrides) {
    cmd->add_option("--config", overrides.config_file, "run configuration file (key = value)");
    auto capture = [&overrides](const std::string& key) {
        return [&overrides, key](const std::string& value) {
            overrides.entries.emplace_back(key, value);
        };
    };
    cmd->add_option_function<std::string>("--data", capture("data"), "SEDS wide CSV file");
    cmd->add_option_function<std::string>("--response", capture("response"), "response MSN");
    cmd->add_option_function<std::vector<std::string>>(
        "--exog",
        [&overrides](const std::vector<std::string>& refs) {
            std::string joined;
            for (const auto& r : refs) {
                if (!joined.empty()) joined += ",";
                joined += r;
            }
            overrides.entries.emplace_back("exog", joined);
        },
        "exogenous columns (MSN or file:<name>)");
    cmd->add_option_function<std::string>("--spec", capture("spec"), "p,d,q or 'auto'");
    cmd->add_option_function<std::string>("--family", capture("family"),
                                          "arima | arimax | holt | auto");
    cmd->add_option_function<std::string>("--holdout", capture("holdout"), "holdout years");
    cmd->add_option_function<std::string>("--horizon", capture("horizon"), "forecast horizon");
    cmd->add_option_function<std::string>("--level", capture("level"), "interval level in (0,1)");
    cmd->add_option_function<std::string>("--exclude-after", capture("exclude_after"),
                                          "drop observations after this year");
    cmd->add_option_function<std::string>("--scenario", capture("scenario"),
                                          "future exogenous CSV (year,<col>,...)");
    cmd->add_option_function<std::string>("--seed", capture("seed"), "deterministic seed");
    cmd->add_option_function<std::string>("--out", capture("out"), "output directory");
    cmd->add_option_function<std::string>("--msn-table", capture("msn_table"), "MSN code table");
    cmd->add_option_function<std::string>("--extra-msn-table", capture("extra_msn_table"),
                                          "user MSN codes merged over the bundled table");
    cmd->add_option_function<std::string>("--exog-lag", capture("exog_lag"),
                                          "uniform lag L: X_{t-L} explains y_t");
    cmd->add_option_function<std::string>("--deflate", capture("deflate"),
                                          "divide price columns by the deflator side file");
    cmd->add_option_function<std::string>("--label", capture("label"), "report display name");
    cmd->add_option_function<std::vector<std::string>>(
        "--side",
        [&overrides](const std::vector<std::string>& sides) {
            for (const auto& s : sides) {
                const auto eq = s.find('=');
                if (eq == std::string::npos) {
                    throw CLI::ValidationError("--side expects name=path");
                }
                overrides.entries.emplace_back("side." + s.substr(0, eq), s.substr(eq + 1));
            }
        },
        "side file mapping name=path (population, precipitation, deflator, ...)");
}

RunConfig resolve_config(const CliOverrides& overrides) {
    RunConfig config;
    if (!overrides.config_file.empty()) {
        config = parse_config_file(overrides.config_file);
    }
    for (const auto& [key, value] : overrides.entries) {
        apply_config_entry(config, key, value);
    }
    return config;
}

int cmd_ingest(const RunConfig& config) {
    seds::MsnTable table = seds::MsnTable::load(config.msn_table);
    if (config.extra_msn_table.has_value()) {
        table.merge(seds::MsnTable::load(*config.extra_msn_table));
    }
    const auto records = seds::parse_seds_csv(config.data_file);
    std::printf("%s: %zu series\n", config.data_file.c_str(), records.size());
    for (const auto& r : records) {
        const int end = r.start_year + static_cast<int>(r.values.size()) - 1;
        std::string decoded = "(not in code table)";
        if (table.contains(r.msn)) {
            const auto key = table.decode(r.msn);
            decoded = key.source + " / " + key.sector_or_type + " / " + key.unit;
        }
        std::printf("  %s %s %d-%d  %s\n", r.msn.c_str(), r.state.c_str(), r.start_year, end,
                    decoded.c_str());
    }
    return 0;
}

int cmd_select(const RunConfig& base) {
    RunConfig config = base;
    config.spec.reset(); // selection explores the grid regardless of any pin
    config.validate();

    seds::MsnTable table = seds::MsnTable::load(config.msn_table);
    if (config.extra_msn_table.has_value()) {
        table.merge(seds::MsnTable::load(*config.extra_msn_table));
    }
    const auto records = seds::parse_seds_csv(config.data_file);
    std::map<std::string, TimeSeries> sides;
    for (const auto& [name, path] : config.side_files) {
        sides.emplace(name, seds::load_side_csv(path, name));
    }
    std::vector<seds::ExogSpec> exog_specs;
    for (const auto& ref : config.exog) exog_specs.push_back({ref});
    seds::Panel panel = seds::build_panel(records, config.response, exog_specs, table, sides,
                                          {true, config.inflation_adjust});
    if (config.exclude_after.has_value()) {
        panel = seds::exclude_years(panel, *config.exclude_after);
    }

    FitOptions options;
    options.optim.seed = config.seed;
    options.exog_lag = config.exog_lag;

    const int d = select_d(panel.response);
    std::printf("selected d = %d (KPSS 5%% rule)\n", d);

    const auto grid = grid_search_aicc(panel.response, panel.exog, d, config.grid_p_max,
                                       config.grid_q_max, options);
    std::printf("%-10s %-14s %s\n", "spec", "AICc", "status");
    for (const auto& c : grid) {
        if (c.fit_ok) {
            std::printf("%-10s %-14.4f ok\n", c.spec.to_string().c_str(), c.aicc);
        } else {
            std::printf("%-10s %-14s failed: %s\n", c.spec.to_string().c_str(), "-",
                        c.failure_reason.c_str());
        }
    }

    std::vector<ArimaSpec> candidates;
    for (const auto& c : grid) {
        if (c.fit_ok && candidates.size() < 5) candidates.push_back(c.spec);
    }
    std::vector<std::pair<std::string, std::optional<ExogMatrix>>> sets;
    sets.emplace_back("none", std::nullopt);
    if (panel.exog.has_value()) sets.emplace_back("exog", panel.exog);
    const auto report = backtest_select(panel.response, sets, candidates, config.holdout, options);

    std::printf("\nbacktest (holdout %d years)\n", report.holdout_years);
    std::printf("%-10s %-8s %-16s %s\n", "spec", "exog", "MSE", "AICc(train)");
    for (const auto& entry : report.entries) {
        if (entry.ok) {
            std::printf("%-10s %-8s %-16.6g %.4f\n", entry.key.spec.to_string().c_str(),
                        entry.key.exog_set.c_str(), entry.mse, entry.train_aicc);
        } else {
            std::printf("%-10s %-8s failed: %s\n", entry.key.spec.to_string().c_str(),
                        entry.key.exog_set.c_str(), entry.failure_reason.c_str());
        }
    }
    std::printf("winner: %s with exog set '%s'\n", report.winner.spec.to_string().c_str(),
                report.winner.exog_set.c_str());
    return 0;
}

void print_fit_summary(const ForecastReport& report) {
    if (report.family == "holt") {
        const auto& fit = *report.holt;
        std::printf("holt damped trend: alpha=%.4f beta*=%.4f phi=%.4f l0=%.4f b0=%.4f sse=%.6g\n",
                    fit.params.alpha, fit.params.beta_star, fit.params.phi, fit.params.l0,
                    fit.params.b0, fit.sse);
        return;
    }
    const ArimaFit& fit = report.family == "arimax" ? report.arimax->arima : *report.arima;
    std::printf("ARIMA%s%s  loglik=%.4f  AICc=%.4f  sigma2=%.6g\n", fit.spec.to_string().c_str(),
                report.family == "arimax" ? "X" : "", fit.loglik, fit.aicc, fit.sigma2);
    if (fit.spec.has_constant()) std::printf("  intercept: %.6g\n", fit.intercept);
    for (std::size_t i = 0; i < fit.ar_coeffs.size(); ++i) {
        std::printf("  ar%zu: %.6g\n", i + 1, fit.ar_coeffs[i]);
    }
    for (std::size_t i = 0; i < fit.ma_coeffs.size(); ++i) {
        std::printf("  ma%zu: %.6g\n", i + 1, fit.ma_coeffs[i]);
    }
    if (report.family == "arimax") {
        for (std::size_t k = 0; k < report.arimax->gamma.size(); ++k) {
            std::printf("  gamma[%s]: %.6g\n", report.arimax->exog_names[k].c_str(),
                        report.arimax->gamma[k]);
        }
    }
}

int cmd_run(const RunConfig& config, bool print_forecast) {
    const ForecastReport report = run_config(config);
    print_fit_summary(report);
    if (report.backtest.has_value()) {
        std::printf("backtest winner: %s / %s\n",
                    report.backtest->winner.spec.to_string().c_str(),
                    report.backtest->winner.exog_set.c_str());
    }
    if (print_forecast) {
        std::printf("%s", report.forecast_csv().c_str());
    }
    std::printf("wrote report.json, forecast.csv, forecast.svg under %s\n",
                config.out_dir.c_str());
    return 0;
}

int cmd_suite(const std::string& data_dir, const std::string& out_dir, std::uint64_t seed) {
    const SuiteOutcome outcome = paper_suite(data_dir, out_dir, seed);
    for (const auto& line : outcome.messages) {
        std::printf("%s\n", line.c_str());
    }
    std::printf("suite: %d completed, %d skipped\n", outcome.completed, outcome.skipped);
    return outcome.all_ok() ? 0 : 2;
}

int cmd_render(const std::string& history_path, const std::string& forecast_path,
               const std::string& out_path, const std::string& title) {
    const TimeSeries history = seds::load_side_csv(history_path, "history");

    std::ifstream in(forecast_path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open forecast file '" + forecast_path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("year,point,lower,upper", 0) != 0) {
        throw Error(ErrorCode::Format, forecast_path + ": header must be 'year,point,lower,upper'");
    }
    Forecast fc;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int year;
        double point, lower, upper;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &year, &point, &lower, &upper) != 4) {
            throw Error(ErrorCode::Parse, forecast_path + ": bad row '" + line + "'");
        }
        if (first) {
            fc.start_year = year;
            first = false;
        }
        fc.point.push_back(point);
        fc.lower.push_back(lower);
        fc.upper.push_back(upper);
    }
    SvgStyle style;
    style.title = title;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + out_path + "'");
    }
    out << render_forecast_svg(history, fc, style);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"annual energy-consumption forecasting (ARIMA / ARIMAX / Holt damped trend)"};
    app.require_subcommand(1);

    CliOverrides ingest_ov, select_ov, fit_ov, forecast_ov;
    auto* ingest = app.add_subcommand("ingest", "validate and summarize a SEDS CSV");
    add_config_flags(ingest, ingest_ov);
    auto* select = app.add_subcommand("select", "differencing order, AICc grid, holdout backtest");
    add_config_flags(select, select_ov);
    auto* fit = app.add_subcommand("fit", "fit a model and write its report");
    add_config_flags(fit, fit_ov);
    auto* forecast = app.add_subcommand("forecast", "fit and forecast, writing all outputs");
    add_config_flags(forecast, forecast_ov);

    std::string suite_data = "data/sample", suite_out = "out/suite";
    std::uint64_t suite_seed = 1;
    auto* suite = app.add_subcommand("suite", "run the full paper model inventory");
    suite->add_option("--data", suite_data, "directory with seds.csv and side files");
    suite->add_option("--out", suite_out, "output directory");
    suite->add_option("--seed", suite_seed, "deterministic seed");

    std::string render_history, render_forecast, render_out = "forecast.svg", render_title;
    auto* render = app.add_subcommand("render", "draw an SVG from history and forecast CSVs");
    render->add_option("--history", render_history, "year,value CSV of observed values")
        ->required();
    render->add_option("--forecast", render_forecast, "year,point,lower,upper CSV")->required();
    render->add_option("--out", render_out, "output SVG path");
    render->add_option("--title", render_title, "chart title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(resolve_config(ingest_ov));
        if (select->parsed()) return cmd_select(resolve_config(select_ov));
        if (fit->parsed()) return cmd_run(resolve_config(fit_ov), false);
        if (forecast->parsed()) return cmd_run(resolve_config(forecast_ov), true);
        if (suite->parsed()) return cmd_suite(suite_data, suite_out, suite_seed);
        if (render->parsed()) return cmd_render(render_history, render_forecast, render_out,
                                                render_title);
    } catch (const enercast::Error& err) {
        std::cerr << enercast::error_code_name(err.code()) << ": " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "E_INTERNAL: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
