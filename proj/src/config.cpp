#include "enercast/config.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace enercast {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int to_int(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Argument, "config key '" + key + "': expected integer, got '" +
                                             value + "'");
    }
}

double to_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Argument,
                    "config key '" + key + "': expected number, got '" + value + "'");
    }
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw Error(ErrorCode::Argument, "config key '" + key + "': expected true/false");
}

} // namespace

std::optional<ArimaSpec> parse_spec_string(const std::string& text) {
    if (text == "auto") return std::nullopt;
    const auto parts = split_list(text);
    if (parts.size() != 3) {
        throw Error(ErrorCode::Argument, "spec must be 'p,d,q' or 'auto', got '" + text + "'");
    }
    ArimaSpec spec;
    spec.p = to_int(parts[0], "spec");
    spec.d = to_int(parts[1], "spec");
    spec.q = to_int(parts[2], "spec");
    validate_spec(spec);
    return spec;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "data") {
        config.data_file = value;
    } else if (key.rfind("side.", 0) == 0) {
        config.side_files[key.substr(5)] = value;
    } else if (key == "msn_table") {
        config.msn_table = value;
    } else if (key == "extra_msn_table") {
        config.extra_msn_table = value;
    } else if (key == "scenario") {
        config.scenario_file = value;
    } else if (key == "response") {
        config.response = value;
    } else if (key == "exog") {
        config.exog = split_list(value);
    } else if (key == "family") {
        config.family = value;
    } else if (key == "spec") {
        config.spec = parse_spec_string(value);
    } else if (key == "exog_lag") {
        config.exog_lag = to_int(value, key);
    } else if (key == "deflate") {
        config.inflation_adjust = to_bool(value, key);
    } else if (key == "grid_p_max") {
        config.grid_p_max = to_int(value, key);
    } else if (key == "grid_q_max") {
        config.grid_q_max = to_int(value, key);
    } else if (key == "holdout") {
        config.holdout = to_int(value, key);
    } else if (key == "horizon") {
        config.horizon = to_int(value, key);
    } else if (key == "level") {
        config.level = to_double(value, key);
    } else if (key == "exclude_after") {
        config.exclude_after = to_int(value, key);
    } else if (key == "out") {
        config.out_dir = value;
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(to_int(value, key));
    } else if (key == "label") {
        config.label = value;
    } else {
        throw Error(ErrorCode::Argument, "unknown config key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open config file '" + path + "'");
    }
    RunConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::Format, path + " line " + std::to_string(line_no) +
                                               ": expected 'key = value'");
        }
        apply_config_entry(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return config;
}

void RunConfig::validate() const {
    if (data_file.empty()) {
        throw Error(ErrorCode::Argument, "no data file configured");
    }
    if (response.empty()) {
        throw Error(ErrorCode::Argument, "no response MSN configured");
    }
    if (horizon < 1) {
        throw Error(ErrorCode::Argument, "horizon must be at least 1");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::Argument, "confidence level must lie in (0,1)");
    }
    if (holdout < 1) {
        throw Error(ErrorCode::Argument, "holdout must be at least 1");
    }
    if (family != "auto" && family != "arima" && family != "arimax" && family != "holt") {
        throw Error(ErrorCode::Argument, "family must be arima, arimax, holt or auto");
    }
    if (family == "arimax" && exog.empty()) {
        throw Error(ErrorCode::Argument, "family arimax requires at least one exog column");
    }
    if (exog_lag < 0) {
        throw Error(ErrorCode::Argument, "exog_lag must be non-negative");
    }
}

} // namespace enercast
