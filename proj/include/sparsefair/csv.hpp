#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsefair/error.hpp"

// Minimal CSV support for the interchange schema: header row required,
// comma separated, UTF-8, '.' decimal separator, optional double quotes with
// "" escapes. No locale handling.

namespace sparsefair::csv {

struct table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(const std::string& name) const {
        const int c = column(name);
        if (c < 0) throw error(errc::csv_error, "missing column '" + name + "'");
        return c;
    }
};

inline std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            if (!cell.empty())
                throw error(errc::csv_error, "stray quote at line " + std::to_string(line_no));
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    if (quoted) throw error(errc::csv_error, "unterminated quote at line " + std::to_string(line_no));
    cells.push_back(std::move(cell));
    return cells;
}

inline table read(std::istream& in) {
    table t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && line_no > 1) continue;
        auto cells = split_line(line, line_no);
        if (line_no == 1) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size())
                throw error(errc::csv_error, "line " + std::to_string(line_no) + " has " +
                                                 std::to_string(cells.size()) + " cells, expected " +
                                                 std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw error(errc::csv_error, "missing header row");
    return t;
}

inline table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::csv_error, "cannot open '" + path + "'");
    return read(in);
}

inline double parse_double(const std::string& cell, std::size_t row, const std::string& col) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw error(errc::csv_error, "non-numeric cell '" + cell + "' at row " +
                                         std::to_string(row + 1) + ", column '" + col + "'");
    return v;
}

// Shortest round-trip formatting keeps generated files byte-identical for a
// fixed seed.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

class writer {
public:
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape(cells[i]);
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

} // namespace sparsefair::csv
