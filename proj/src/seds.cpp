#include "enercast/seds.hpp"

#include "enercast/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace enercast::seds {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

bool is_blank(const std::string& cell) {
    return std::all_of(cell.begin(), cell.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_number(const std::string& cell, const std::string& context) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::Parse, "non-numeric cell '" + cell + "' " + context);
    }
    return value;
}

int parse_year(const std::string& cell, const std::string& context) {
    int year = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), year);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::Format, "expected a year, found '" + cell + "' " + context);
    }
    return year;
}

bool valid_msn_shape(const std::string& code) {
    if (code.size() != 5) return false;
    return std::all_of(code.begin(), code.end(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    });
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, subst});
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

} // namespace

MsnTable MsnTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open MSN table '" + path + "'");
    }
    MsnTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (line_no == 1) {
            if (cells.size() != 4 || cells[0] != "code") {
                throw Error(ErrorCode::Format,
                            "MSN table '" + path + "' must start with header "
                            "'code,source,sector_or_type,unit'");
            }
            continue;
        }
        if (cells.size() != 4) {
            throw Error(ErrorCode::Format, "MSN table '" + path + "' line " +
                                               std::to_string(line_no) + " needs 4 fields");
        }
        if (!valid_msn_shape(cells[0])) {
            throw Error(ErrorCode::Format,
                        "invalid MSN '" + cells[0] + "' in table line " + std::to_string(line_no));
        }
        table.rows_[cells[0]] = MsnKey{cells[0], cells[1], cells[2], cells[3]};
    }
    return table;
}

void MsnTable::merge(const MsnTable& extra) {
    for (const auto& [code, key] : extra.rows_) {
        rows_[code] = key;
    }
}

bool MsnTable::contains(const std::string& code) const { return rows_.count(code) > 0; }

MsnKey MsnTable::decode(const std::string& code) const {
    if (!valid_msn_shape(code)) {
        throw Error(ErrorCode::UnknownMsn, "malformed MSN '" + code + "' (want 5 of [A-Z0-9])");
    }
    const auto it = rows_.find(code);
    if (it != rows_.end()) {
        return it->second;
    }
    // Suggest the closest known mnemonics.
    std::vector<std::pair<std::size_t, std::string>> ranked;
    ranked.reserve(rows_.size());
    for (const auto& [known, key] : rows_) {
        ranked.emplace_back(edit_distance(code, known), known);
    }
    std::sort(ranked.begin(), ranked.end());
    std::string hint;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, ranked.size()); ++i) {
        if (!hint.empty()) hint += ", ";
        hint += ranked[i].second;
    }
    throw Error(ErrorCode::UnknownMsn, "unknown MSN '" + code + "'; nearest codes: " + hint);
}

std::vector<SedsRecord> parse_seds_stream(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::Format, origin + ": empty file");
    }
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "Data_Status" || header[1] != "State" ||
        header[2] != "MSN") {
        throw Error(ErrorCode::Format,
                    origin + " line 1: header must be 'Data_Status,State,MSN,<year>,...'");
    }
    std::vector<int> years(header.size() - 3);
    for (std::size_t i = 3; i < header.size(); ++i) {
        years[i - 3] = parse_year(header[i], "in " + origin + " header column " + std::to_string(i + 1));
        if (i > 3 && years[i - 3] != years[i - 4] + 1) {
            throw Error(ErrorCode::Format,
                        origin + ": header years must be consecutive, found " +
                            std::to_string(years[i - 4]) + " then " + std::to_string(years[i - 3]));
        }
    }

    std::vector<SedsRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_blank(line)) continue;
        const auto cells = split_csv_line(line);
        const std::string where = origin + " line " + std::to_string(line_no);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::Format, where + ": expected " + std::to_string(header.size()) +
                                               " cells, found " + std::to_string(cells.size()));
        }
        SedsRecord record;
        record.state = cells[1];
        record.msn = cells[2];
        if (!valid_msn_shape(record.msn)) {
            throw Error(ErrorCode::Format, where + ": malformed MSN '" + record.msn + "'");
        }

        // Blank cells may pad the edges; a blank strictly between two values
        // is a recording gap we refuse to bridge.
        int first = -1, last = -1;
        for (std::size_t i = 3; i < cells.size(); ++i) {
            if (!is_blank(cells[i])) {
                if (first < 0) first = static_cast<int>(i);
                last = static_cast<int>(i);
            }
        }
        if (first < 0) {
            throw Error(ErrorCode::Format, where + ": row for " + record.msn + " has no values");
        }
        record.start_year = years[static_cast<std::size_t>(first - 3)];
        for (int i = first; i <= last; ++i) {
            const auto& cell = cells[static_cast<std::size_t>(i)];
            if (is_blank(cell)) {
                throw Error(ErrorCode::Gap, "missing value for " + record.msn + " in year " +
                                                std::to_string(years[static_cast<std::size_t>(i - 3)]) +
                                                " (" + where + ")");
            }
            record.values.push_back(parse_number(cell, "for " + record.msn + " in " + where));
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<SedsRecord> parse_seds_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open SEDS file '" + path + "'");
    }
    return parse_seds_stream(in, path);
}

void write_seds_csv(std::ostream& out, const std::vector<SedsRecord>& records) {
    if (records.empty()) {
        throw Error(ErrorCode::Argument, "no records to write");
    }
    int lo = records.front().start_year;
    int hi = lo;
    for (const auto& r : records) {
        lo = std::min(lo, r.start_year);
        hi = std::max(hi, r.start_year + static_cast<int>(r.values.size()) - 1);
    }
    out << "Data_Status,State,MSN";
    for (int y = lo; y <= hi; ++y) out << ',' << y;
    out << '\n';
    char buf[40];
    for (const auto& r : records) {
        out << "X," << r.state << ',' << r.msn;
        for (int y = lo; y <= hi; ++y) {
            out << ',';
            const int idx = y - r.start_year;
            if (idx >= 0 && idx < static_cast<int>(r.values.size())) {
                std::snprintf(buf, sizeof(buf), "%.12g", r.values[static_cast<std::size_t>(idx)]);
                out << buf;
            }
        }
        out << '\n';
    }
}

TimeSeries load_side_csv(const std::string& path, const std::string& label) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open side file '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::Format, path + ": empty file");
    }
    {
        const auto header = split_csv_line(line);
        if (header.size() != 2 || header[0] != "year" || header[1] != "value") {
            throw Error(ErrorCode::Format, path + ": header must be 'year,value'");
        }
    }
    int start_year = 0;
    std::vector<double> values;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_blank(line)) continue;
        const auto cells = split_csv_line(line);
        const std::string where = path + " line " + std::to_string(line_no);
        if (cells.size() != 2) {
            throw Error(ErrorCode::Format, where + ": expected 'year,value'");
        }
        const int year = parse_year(cells[0], "in " + where);
        if (values.empty()) {
            start_year = year;
        } else if (year != start_year + static_cast<int>(values.size())) {
            throw Error(ErrorCode::Format,
                        where + ": years must be strictly consecutive, expected " +
                            std::to_string(start_year + static_cast<int>(values.size())));
        }
        values.push_back(parse_number(cells[1], "in " + where));
    }
    if (values.empty()) {
        throw Error(ErrorCode::Format, path + ": no rows");
    }
    return {start_year, std::move(values), label};
}

namespace {

const SedsRecord& find_record(const std::vector<SedsRecord>& records, const std::string& msn) {
    for (const auto& r : records) {
        if (r.msn == msn) return r;
    }
    throw Error(ErrorCode::MissingSeries, "series '" + msn + "' not present in the data file");
}

bool wants_btu_conversion(const MsnKey& key) { return key.unit == "billion Btu"; }
bool is_price(const MsnKey& key) { return key.unit == "dollars per million Btu"; }

} // namespace

Panel build_panel(const std::vector<SedsRecord>& records, const std::string& response_msn,
                  const std::vector<ExogSpec>& exog_specs, const MsnTable& table,
                  const std::map<std::string, TimeSeries>& side_files, const UnitPolicy& policy) {
    std::vector<std::string> notes;

    auto deflate = [&](TimeSeries series) {
        const auto it = side_files.find("deflator");
        if (it == side_files.end()) {
            throw Error(ErrorCode::MissingSeries,
                        "inflation adjustment requested but no 'deflator' side file is loaded");
        }
        const TimeSeries& deflator = it->second;
        if (deflator.start_year() > series.start_year() || deflator.end_year() < series.end_year()) {
            throw Error(ErrorCode::Coverage,
                        "deflator covers " + std::to_string(deflator.start_year()) + "-" +
                            std::to_string(deflator.end_year()) + " but price series '" +
                            series.label() + "' needs " + std::to_string(series.start_year()) +
                            "-" + std::to_string(series.end_year()));
        }
        std::vector<double> adjusted(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) {
            adjusted[i] = series[i] / deflator.at_year(series.year_at(i));
        }
        notes.push_back(series.label() + ": deflated");
        return TimeSeries(series.start_year(), std::move(adjusted), series.label());
    };

    auto resolve_msn = [&](const std::string& msn) {
        const MsnKey key = table.decode(msn);
        TimeSeries series = find_record(records, msn).to_series();
        if (policy.btu_to_trillion && wants_btu_conversion(key)) {
            std::vector<double> scaled(series.values());
            for (double& v : scaled) v /= 1000.0;
            series = TimeSeries(series.start_year(), std::move(scaled), msn);
            notes.push_back(msn + ": billion Btu -> trillion Btu");
        }
        if (policy.inflation_adjust && is_price(key)) {
            series = deflate(std::move(series));
        }
        return series;
    };

    TimeSeries response = resolve_msn(response_msn);

    std::vector<TimeSeries> exog_cols;
    for (const auto& spec : exog_specs) {
        if (spec.ref.rfind("file:", 0) == 0) {
            const std::string name = spec.ref.substr(5);
            const auto it = side_files.find(name);
            if (it == side_files.end()) {
                throw Error(ErrorCode::MissingSeries, "side series '" + name + "' is not loaded");
            }
            exog_cols.push_back(it->second.with_label(name));
        } else {
            exog_cols.push_back(resolve_msn(spec.ref));
        }
    }

    Panel panel{std::move(response), std::nullopt, {}, std::nullopt};
    if (!exog_cols.empty()) {
        std::vector<TimeSeries> bundle;
        bundle.push_back(panel.response);
        for (auto& c : exog_cols) bundle.push_back(std::move(c));
        std::vector<TimeSeries> aligned = align_panel(bundle);
        panel.response = aligned.front();
        panel.exog = ExogMatrix(std::vector<TimeSeries>(aligned.begin() + 1, aligned.end()));
    }
    panel.unit_notes = std::move(notes);
    return panel;
}

Panel exclude_years(const Panel& panel, int cutoff_year) {
    if (!panel.response.covers_year(cutoff_year)) {
        throw Error(ErrorCode::Argument,
                    "cutoff year " + std::to_string(cutoff_year) + " outside panel range " +
                        std::to_string(panel.response.start_year()) + "-" +
                        std::to_string(panel.response.end_year()));
    }
    Panel out{panel.response.slice_years(panel.response.start_year(), cutoff_year), std::nullopt,
              panel.unit_notes, cutoff_year};
    if (panel.exog.has_value()) {
        std::vector<TimeSeries> cols;
        cols.reserve(panel.exog->column_count());
        for (const auto& col : panel.exog->columns()) {
            cols.push_back(col.slice_years(col.start_year(), cutoff_year));
        }
        out.exog = ExogMatrix(std::move(cols));
    }
    return out;
}

} // namespace enercast::seds
