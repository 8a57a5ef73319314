#pragma once

#include <string>
#include <vector>

namespace vre::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws DataError when absent.
    std::size_t column(const std::string& name) const;
    /// Column index by name, or npos when absent.
    std::size_t column_or_npos(const std::string& name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Table read_file(const std::string& path);
Table parse(const std::string& text);

std::vector<std::string> split_line(const std::string& line, char delim = ',');

double to_double(const std::string& s, const std::string& context);
long to_long(const std::string& s, const std::string& context);

/// Fixed 6-significant-digit formatting used by every CSV emitter.
std::string format_number(double v);

}  // namespace vre::csv
