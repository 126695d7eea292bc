#pragma once

#include "enercast/arimax.hpp"
#include "enercast/series.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace enercast::seds {

/// Decoded Mnemonic Series Name: energy source, sector or activity, unit.
struct MsnKey {
    std::string code; // 5 uppercase characters
    std::string source;
    std::string sector_or_type;
    std::string unit;
};

/// One wide-CSV row: an MSN for one state with a gap-free run of annual values.
struct SedsRecord {
    std::string msn;
    std::string state;
    int start_year = 0;
    std::vector<double> values;

    TimeSeries to_series() const { return {start_year, values, msn}; }
};

/// Code table mapping MSN mnemonics to their decoded classifiers. The bundled
/// table ships with the repo; extra user tables can be merged on top.
class MsnTable {
public:
    static MsnTable load(const std::string& path);
    void merge(const MsnTable& extra);

    /// Unknown codes raise an unknown-MSN error listing the nearest mnemonics
    /// by edit distance.
    MsnKey decode(const std::string& code) const;
    bool contains(const std::string& code) const;
    std::size_t size() const { return rows_.size(); }

private:
    std::map<std::string, MsnKey> rows_;
};

/// Parses an EIA-SEDS-style wide CSV (`Data_Status,State,MSN,<year>,...`).
/// Blank cells may only pad the edges of a row; a blank between two values is
/// a gap error naming the MSN and year.
std::vector<SedsRecord> parse_seds_csv(const std::string& path);
std::vector<SedsRecord> parse_seds_stream(std::istream& in, const std::string& origin);

/// Inverse of the parser, used for round-trip checks and `ingest --rewrite`.
void write_seds_csv(std::ostream& out, const std::vector<SedsRecord>& records);

/// Side files are two-column `year,value` CSVs with strictly consecutive years
/// (population, precipitation, CPI deflator, ...).
TimeSeries load_side_csv(const std::string& path, const std::string& label);

/// An aligned modeling panel: the response plus its exogenous columns and the
/// bookkeeping of what was done to build them.
struct Panel {
    TimeSeries response;
    std::optional<ExogMatrix> exog;
    std::vector<std::string> unit_notes;  // conversions applied per series
    std::optional<int> excluded_after;    // exclude_years cutoff, when applied
};

struct UnitPolicy {
    bool btu_to_trillion = true;   // billion Btu -> trillion Btu (divide by 1000)
    bool inflation_adjust = false; // divide price columns by the deflator side file
};

/// One exogenous column request: either a 5-character MSN resolved from the
/// records, or `file:<name>` resolved from the side files.
struct ExogSpec {
    std::string ref;
};

/// Assembles the response and exogenous columns, applies unit conversion and
/// optional deflation, and aligns everything to the common year overlap.
Panel build_panel(const std::vector<SedsRecord>& records, const std::string& response_msn,
                  const std::vector<ExogSpec>& exog_specs, const MsnTable& table,
                  const std::map<std::string, TimeSeries>& side_files, const UnitPolicy& policy);

/// Truncates the response and every exogenous column to years <= cutoff_year.
Panel exclude_years(const Panel& panel, int cutoff_year);

} // namespace enercast::seds
