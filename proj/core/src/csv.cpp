#include "vre/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vre/errors.hpp"

namespace vre::csv {

std::size_t Table::column(const std::string& name) const {
    const std::size_t i = column_or_npos(name);
    if (i == npos) throw DataError("CSV: missing column '" + name + "'");
    return i;
}

std::size_t Table::column_or_npos(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return npos;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == delim) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Table parse(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (first) {
            t.header = std::move(fields);
            first = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("CSV: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

double to_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(context + ": cannot parse number '" + s + "'");
    }
}

long to_long(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(context + ": cannot parse integer '" + s + "'");
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace vre::csv
