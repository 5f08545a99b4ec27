#include "reson/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace reson {

std::string format_real(Real v) {
    if (std::isnan((double)v)) return "nan";
    if (std::isinf((double)v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.11Le", v);
    // normalize "1.00000000000e+00" -> "1.00000000000e+00" is already stable;
    // strip nothing so identical inputs give identical bytes
    return buf;
}

Cell Cell::text(std::string s) { return {Kind::Text, std::move(s)}; }
Cell Cell::num(Real v) { return {Kind::Number, format_real(v)}; }
Cell Cell::integer(long v) { return {Kind::Integer, std::to_string(v)}; }
Cell Cell::boolean(bool v) { return {Kind::Boolean, v ? "true" : "false"}; }

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw SolverError("report: row width does not match the header");
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(row[i].token);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& t) {
    std::ostringstream os;
    os << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << "  {";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            const Cell& c = t.rows[r][i];
            os << (i ? ", " : "") << json_escape(t.columns[i]) << ": ";
            switch (c.kind) {
                case Cell::Kind::Text:
                    os << json_escape(c.token);
                    break;
                case Cell::Kind::Number:
                    if (c.token == "nan" || c.token == "inf" || c.token == "-inf") {
                        os << "null";
                        break;
                    }
                    os << c.token;
                    break;
                case Cell::Kind::Integer:
                case Cell::Kind::Boolean:
                    os << c.token;
                    break;
            }
        }
        os << (r + 1 < t.rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
    return os.str();
}

}  // namespace reson
