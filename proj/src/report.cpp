#include "enercast/report.hpp"

#include "enercast/errors.hpp"
#include "enercast/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace enercast {

namespace fs = std::filesystem;

namespace {

std::string spec_string(const ArimaSpec& spec) { return spec.to_string(); }

nlohmann::ordered_json spec_json(const ArimaSpec& spec) {
    return {{"p", spec.p}, {"d", spec.d}, {"q", spec.q}, {"constant", spec.has_constant()}};
}

nlohmann::ordered_json arima_model_json(const ArimaFit& fit) {
    nlohmann::ordered_json j;
    j["spec"] = spec_json(fit.spec);
    j["intercept"] = fit.intercept;
    j["ar"] = fit.ar_coeffs;
    j["ma"] = fit.ma_coeffs;
    j["sigma2"] = fit.sigma2;
    j["loglik"] = fit.loglik;
    j["aicc"] = fit.aicc;
    j["n_effective"] = fit.n_effective;
    j["sigma_floored"] = fit.sigma_floored;
    return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out << content;
}

} // namespace

nlohmann::ordered_json ForecastReport::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["label"] = config.label.empty() ? config.response : config.label;

    nlohmann::ordered_json model;
    model["family"] = family;
    if (family == "holt") {
        const HoltFit& fit = *holt;
        model["alpha"] = fit.params.alpha;
        model["beta_star"] = fit.params.beta_star;
        model["phi"] = fit.params.phi;
        model["l0"] = fit.params.l0;
        model["b0"] = fit.params.b0;
        model["sse"] = fit.sse;
        model["n"] = fit.n;
    } else if (family == "arimax") {
        model.update(arima_model_json(arimax->arima));
        nlohmann::ordered_json gamma;
        for (std::size_t k = 0; k < arimax->gamma.size(); ++k) {
            gamma[arimax->exog_names[k]] = arimax->gamma[k];
        }
        model["gamma"] = gamma;
        model["exog_lag"] = arimax->exog_lag;
    } else {
        model.update(arima_model_json(*arima));
    }
    j["model"] = model;

    if (selected_d.has_value() || grid.has_value()) {
        nlohmann::ordered_json selection;
        if (selected_d.has_value()) selection["d"] = *selected_d;
        if (grid.has_value()) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& c : *grid) {
                rows.push_back({{"spec", spec_string(c.spec)},
                                {"aicc", c.aicc},
                                {"ok", c.fit_ok}});
            }
            selection["grid"] = rows;
        }
        j["selection"] = selection;
    }

    if (backtest.has_value()) {
        nlohmann::ordered_json bt;
        bt["holdout_years"] = backtest->holdout_years;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& entry : backtest->entries) {
            rows.push_back({{"spec", spec_string(entry.key.spec)},
                            {"exog_set", entry.key.exog_set},
                            {"mse", entry.mse},
                            {"aicc", entry.train_aicc},
                            {"ok", entry.ok}});
        }
        bt["entries"] = rows;
        bt["winner"] = {{"spec", spec_string(backtest->winner.spec)},
                        {"exog_set", backtest->winner.exog_set}};
        j["backtest"] = bt;
    }

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        rows.push_back({{"year", forecast.start_year + static_cast<int>(i)},
                        {"point", forecast.point[i]},
                        {"lower", forecast.lower[i]},
                        {"upper", forecast.upper[i]}});
    }
    j["forecast"] = {{"level", forecast.level}, {"rows", rows}};

    nlohmann::ordered_json prov;
    prov["data_file"] = config.data_file;
    nlohmann::ordered_json sides;
    for (const auto& [name, path] : config.side_files) sides[name] = path;
    prov["side_files"] = sides;
    prov["msn_table"] = config.msn_table;
    prov["response"] = config.response;
    prov["exog"] = config.exog;
    prov["scenario_source"] = scenario_source;
    if (config.exclude_after.has_value()) {
        prov["exclude_after"] = *config.exclude_after;
    } else {
        prov["exclude_after"] = nullptr;
    }
    prov["holdout"] = config.holdout;
    prov["horizon"] = config.horizon;
    prov["level"] = config.level;
    prov["seed"] = config.seed;
    prov["unit_notes"] = unit_notes;
    j["provenance"] = prov;
    return j;
}

std::string ForecastReport::forecast_csv() const {
    std::ostringstream os;
    os << "year,point,lower,upper\n";
    char buf[128];
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g\n",
                      forecast.start_year + static_cast<int>(i), forecast.point[i],
                      forecast.lower[i], forecast.upper[i]);
        os << buf;
    }
    return os.str();
}

ExogMatrix parse_scenario_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open scenario file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::Format, path + ": empty scenario file");
    }
    std::vector<std::string> names;
    {
        std::istringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            names.push_back(cell);
        }
    }
    if (names.size() < 2 || names[0] != "year") {
        throw Error(ErrorCode::Format, path + ": header must be 'year,<col>,...'");
    }

    int start_year = 0;
    std::vector<std::vector<double>> columns(names.size() - 1);
    int rows = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            cells.push_back(cell);
        }
        if (cells.size() != names.size()) {
            throw Error(ErrorCode::Format, path + " line " + std::to_string(line_no) +
                                               ": expected " + std::to_string(names.size()) +
                                               " cells");
        }
        int year;
        try {
            year = std::stoi(cells[0]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::Parse,
                        path + " line " + std::to_string(line_no) + ": bad year '" + cells[0] + "'");
        }
        if (rows == 0) {
            start_year = year;
        } else if (year != start_year + rows) {
            throw Error(ErrorCode::Format,
                        path + " line " + std::to_string(line_no) +
                            ": scenario years must be strictly consecutive");
        }
        for (std::size_t k = 1; k < cells.size(); ++k) {
            try {
                columns[k - 1].push_back(std::stod(cells[k]));
            } catch (const std::exception&) {
                throw Error(ErrorCode::Parse, path + " line " + std::to_string(line_no) +
                                                  ": bad number '" + cells[k] + "'");
            }
        }
        ++rows;
    }
    if (rows == 0) {
        throw Error(ErrorCode::Format, path + ": scenario has no rows");
    }
    std::vector<TimeSeries> cols;
    cols.reserve(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
        cols.emplace_back(start_year, std::move(columns[k]), names[k + 1]);
    }
    return ExogMatrix::scenario(std::move(cols));
}

ForecastReport run_config(const RunConfig& config) {
    config.validate();
    if (config.family == "arima" && !config.exog.empty()) {
        throw Error(ErrorCode::Argument,
                    "family arima takes no exog columns; use arimax or auto");
    }

    seds::MsnTable table = seds::MsnTable::load(config.msn_table);
    if (config.extra_msn_table.has_value()) {
        table.merge(seds::MsnTable::load(*config.extra_msn_table));
    }
    const std::vector<seds::SedsRecord> records = seds::parse_seds_csv(config.data_file);
    std::map<std::string, TimeSeries> sides;
    for (const auto& [name, path] : config.side_files) {
        sides.emplace(name, seds::load_side_csv(path, name));
    }

    const seds::UnitPolicy policy{true, config.inflation_adjust};
    std::vector<seds::ExogSpec> exog_specs;
    const bool use_exog = !config.exog.empty() && config.family != "arima";
    if (use_exog) {
        for (const auto& ref : config.exog) exog_specs.push_back({ref});
    }
    seds::Panel panel =
        seds::build_panel(records, config.response, exog_specs, table, sides, policy);
    if (config.exclude_after.has_value()) {
        panel = seds::exclude_years(panel, *config.exclude_after);
    }
    const TimeSeries& y = panel.response;

    FitOptions options;
    options.optim.seed = config.seed;
    options.exog_lag = config.exog_lag;

    std::optional<ArimaFit> arima_fit;
    std::optional<ArimaxFit> arimax_fit;
    std::optional<HoltFit> holt_fit;
    std::optional<BacktestReport> backtest;
    std::optional<std::vector<CandidateResult>> grid;
    std::optional<int> selected;
    std::string family = config.family;
    std::string scenario_source = "none (no exogenous columns)";

    Forecast fc;
    if (config.family == "holt") {
        holt_fit = fit_holt(y, PhiMode::Fixed95, options.optim);
        fc = forecast_holt(*holt_fit, config.horizon, config.level);
    } else {
        // Candidate orders: pinned by the config, or KPSS + AICc grid.
        std::vector<ArimaSpec> candidates;
        if (config.spec.has_value()) {
            candidates.push_back(*config.spec);
        } else {
            const int d = select_d(y);
            selected = d;
            std::optional<ExogMatrix> grid_exog = use_exog ? panel.exog : std::nullopt;
            grid = grid_search_aicc(y, grid_exog, d, config.grid_p_max, config.grid_q_max,
                                    options);
            for (const auto& c : *grid) {
                if (c.fit_ok && candidates.size() < 5) candidates.push_back(c.spec);
            }
        }

        std::vector<std::pair<std::string, std::optional<ExogMatrix>>> sets;
        if (config.family != "arimax") {
            sets.emplace_back("none", std::nullopt);
        }
        if (use_exog) {
            sets.emplace_back("exog", panel.exog);
        }
        backtest = backtest_select(y, sets, candidates, config.holdout, options);

        const ArimaSpec winner_spec = backtest->winner.spec;
        if (backtest->winner.exog_set == "exog") {
            family = "arimax";
            arimax_fit = fit_arimax(y, *panel.exog, winner_spec, config.exog_lag, options);

            std::optional<ExogMatrix> future;
            if (config.scenario_file.has_value()) {
                future = parse_scenario_csv(*config.scenario_file);
                scenario_source = "file:" + *config.scenario_file;
            } else {
                future = auto_scenario(*panel.exog, config.horizon);
                scenario_source = "auto_scenario (holt damped trend, phi=0.95)";
            }
            fc = forecast_arimax(*arimax_fit, *future, config.horizon, config.level);
        } else {
            family = "arima";
            arima_fit = fit_arima(y, winner_spec, options);
            fc = forecast_arima(*arima_fit, config.horizon, config.level);
        }
    }

    ForecastReport report{config,     family, arima_fit, arimax_fit, holt_fit,
                          backtest,   grid,   selected,  y,          fc,
                          scenario_source, panel.unit_notes};

    fs::create_directories(config.out_dir);
    const fs::path out(config.out_dir);
    write_text_file(out / "report.json", report.to_json().dump(2) + "\n");
    write_text_file(out / "forecast.csv", report.forecast_csv());
    SvgStyle style;
    style.title = config.label.empty() ? config.response : config.label;
    write_text_file(out / "forecast.svg", render_forecast_svg(y, fc, style));
    return report;
}

namespace {

struct SuiteModel {
    std::string name;
    std::string response;
    std::vector<std::string> exog;
    std::string family; // arimax | arima | holt
    ArimaSpec spec;
    int horizon = 10;
    std::optional<int> exclude_after;
    std::string subdir; // optional nesting below the model directory
};

std::vector<SuiteModel> suite_models() {
    std::vector<SuiteModel> models;
    const auto pop = std::string("file:population");
    // The nine ARIMA(X) model configurations.
    models.push_back({"total_energy", "TETCB", {pop, "TEPRB", "MGACD", "TETCD"},
                      "arimax", ArimaSpec{2, 0, 0}, 10, std::nullopt, ""});
    models.push_back({"petroleum", "PATCB", {pop, "PAPRB"}, "arimax", ArimaSpec{2, 1, 0},
                      10, std::nullopt, ""});
    models.push_back({"petroleum", "PATCB", {pop, "PAPRB"}, "arimax", ArimaSpec{2, 1, 0},
                      12, 2019, "precovid"});
    models.push_back({"natural_gas", "NGTCB", {pop, "NGMPB"}, "arimax", ArimaSpec{2, 1, 0},
                      10, std::nullopt, ""});
    models.push_back({"natural_gas", "NGTCB", {pop, "NGMPB"}, "arimax", ArimaSpec{2, 1, 0},
                      12, 2019, "precovid"});
    models.push_back({"hydroelectric", "HYTCB", {"file:precipitation"}, "arimax",
                      ArimaSpec{1, 1, 1}, 10, std::nullopt, ""});
    for (const auto& [sub, msn] : std::vector<std::pair<std::string, std::string>>{
             {"solar", "SOTCB"}, {"wind", "WYTCB"}, {"biomass", "BMTCB"}, {"geothermal", "GETCB"}}) {
        models.push_back({"renewables", msn, {}, "arima", ArimaSpec{2, 1, 2}, 10,
                          std::nullopt, sub});
    }
    models.push_back({"commercial", "TECCB", {pop, "TECCD"}, "arimax", ArimaSpec{4, 1, 0},
                      10, std::nullopt, ""});
    models.push_back({"residential", "TERCB", {pop, "TERCD"}, "arimax", ArimaSpec{4, 1, 0},
                      10, std::nullopt, ""});
    models.push_back({"industrial", "TEICB", {"NGTCD", "PATCD"}, "arimax", ArimaSpec{2, 1, 2},
                      10, std::nullopt, ""});
    models.push_back({"transportation", "TEACB", {pop, "TEACD"}, "arimax", ArimaSpec{2, 1, 2},
                      10, std::nullopt, ""});
    // Holt damped-trend forecasts per renewable source, phi pinned at 0.95.
    for (const auto& [sub, msn] : std::vector<std::pair<std::string, std::string>>{
             {"holt_solar", "SOTCB"}, {"holt_wind", "WYTCB"}, {"holt_biomass", "BMTCB"},
             {"holt_geothermal", "GETCB"}}) {
        models.push_back({sub, msn, {}, "holt", ArimaSpec{}, 10, std::nullopt, ""});
    }
    return models;
}

} // namespace

SuiteOutcome paper_suite(const std::string& data_dir, const std::string& out_dir,
                         std::uint64_t seed) {
    const fs::path data(data_dir);
    fs::path table_path = data / "msn_codes.csv";
    if (!fs::exists(table_path)) {
        table_path = data.parent_path() / "msn_codes.csv";
    }
    if (!fs::exists(table_path)) {
        throw Error(ErrorCode::Io,
                    "no msn_codes.csv found in '" + data_dir + "' or its parent directory");
    }

    const std::vector<SuiteModel> models = suite_models();
    std::vector<std::future<std::string>> jobs;
    jobs.reserve(models.size());
    for (const SuiteModel& model : models) {
        jobs.push_back(std::async(std::launch::async, [&, model]() -> std::string {
            RunConfig config;
            config.data_file = (data / "seds.csv").string();
            config.side_files["population"] = (data / "population.csv").string();
            config.side_files["precipitation"] = (data / "precipitation.csv").string();
            config.side_files["deflator"] = (data / "deflator.csv").string();
            config.msn_table = table_path.string();
            config.response = model.response;
            config.exog = model.exog;
            config.family = model.family;
            if (model.family != "holt") config.spec = model.spec;
            config.inflation_adjust = true;
            config.holdout = 10;
            config.horizon = model.horizon;
            config.level = 0.95;
            config.exclude_after = model.exclude_after;
            config.seed = seed;
            config.label = model.name + (model.subdir.empty() ? "" : " (" + model.subdir + ")");
            fs::path out = fs::path(out_dir) / model.name;
            if (!model.subdir.empty()) out /= model.subdir;
            config.out_dir = out.string();
            try {
                run_config(config);
                return "";
            } catch (const Error& err) {
                return std::string(error_code_name(err.code())) + " " + err.what();
            }
        }));
    }

    SuiteOutcome outcome;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string failure = jobs[i].get();
        const std::string id =
            models[i].name + (models[i].subdir.empty() ? "" : "/" + models[i].subdir);
        if (failure.empty()) {
            ++outcome.completed;
            outcome.messages.push_back(id + ": ok");
        } else {
            ++outcome.skipped;
            outcome.messages.push_back(id + ": skipped (" + failure + ")");
        }
    }
    return outcome;
}

} // namespace enercast
