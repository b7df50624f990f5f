#include "ulindley/dataset.hpp"

#include "ulindley/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <vector>

namespace ulindley {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    std::string out(s.substr(first, last - first + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(delimiter, start);
        cells.push_back(trim(std::string_view(line).substr(start, end - start)));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return cells;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

double parse_cell(const std::string& cell, std::size_t line) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (!cell.empty() && *begin == '+') ++begin;
    const auto [stop, ec] = std::from_chars(begin, end, value);
    if (cell.empty() || ec != std::errc() || stop != end || !std::isfinite(value)) {
        throw DataError("line " + std::to_string(line) + ": '" + cell + "' is not a number", line);
    }
    return value;
}

}  // namespace

Dataset load_csv(std::istream& in, const CsvOptions& options, const std::string& source) {
    std::string line;
    std::size_t line_number = 0;
    std::optional<std::vector<std::string>> header;
    while (!header && std::getline(in, line)) {
        ++line_number;
        if (!blank(line)) header = split(line, options.delimiter);
    }
    if (!header) throw DataError(source + ": no header row", line_number);

    std::size_t index = 0;
    if (const auto* name = std::get_if<std::string>(&options.column)) {
        const auto it = std::find(header->begin(), header->end(), *name);
        if (it == header->end()) throw DataError(source + ": no column named '" + *name + "'", line_number);
        index = static_cast<std::size_t>(it - header->begin());
    } else {
        index = std::get<std::size_t>(options.column);
        if (index >= header->size()) {
            throw DataError(source + ": column index " + std::to_string(index) + " is past the last column",
                            line_number);
        }
    }

    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        const std::vector<std::string> cells = split(line, options.delimiter);
        if (index >= cells.size()) {
            throw DataError("line " + std::to_string(line_number) + ": row has no column " + std::to_string(index),
                            line_number);
        }
        double value = parse_cell(cells[index], line_number);
        if (options.scale == Scale::Percent) value /= 100.0;
        if (!(value >= 0.0 && value <= 1.0)) {
            throw DataError("line " + std::to_string(line_number) + ": " + cells[index] +
                                (options.scale == Scale::Percent ? " is outside [0,100]" : " is outside [0,1]"),
                            line_number);
        }
        values.push_back(value);
    }
    if (values.empty()) throw DataError(source + ": no data rows", line_number);

    return {source, (*header)[index], options.scale, ProportionSample(std::move(values))};
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_csv(in, options, path);
}

}  // namespace ulindley
