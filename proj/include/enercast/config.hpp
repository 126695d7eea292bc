#pragma once

#include "enercast/arima.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enercast {

/// Declarative run description: `key = value` lines in a plain text file,
/// overridable by CLI flags (flags > file > defaults).
struct RunConfig {
    // Inputs
    std::string data_file;
    std::map<std::string, std::string> side_files; // logical name -> path
    std::string msn_table = "data/msn_codes.csv";
    std::optional<std::string> extra_msn_table;
    std::optional<std::string> scenario_file;

    // Model
    std::string response;                 // MSN
    std::vector<std::string> exog;        // MSN or file:<name> references
    std::string family = "auto";          // arima | arimax | holt | auto
    std::optional<ArimaSpec> spec;        // unset -> automatic selection
    int exog_lag = 0;
    bool inflation_adjust = false;
    int grid_p_max = 5;
    int grid_q_max = 5;

    // Protocol
    int holdout = 10;
    int horizon = 10;
    double level = 0.95;
    std::optional<int> exclude_after;

    // Output
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string label; // display name; defaults to the response MSN

    void validate() const;
};

RunConfig parse_config_file(const std::string& path);

/// Applies one `key = value` assignment; unknown keys are argument errors.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

/// "p,d,q" -> spec; "auto" -> nullopt.
std::optional<ArimaSpec> parse_spec_string(const std::string& text);

} // namespace enercast
