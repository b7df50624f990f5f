#pragma once

#include "ulindley/sample.hpp"

#include <cstddef>
#include <istream>
#include <string>
#include <variant>

namespace ulindley {

enum class Scale { Unit, Percent };

/// Column selector: a header name or a 0-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct CsvOptions {
    ColumnRef column = std::size_t{0};
    Scale scale = Scale::Unit;
    char delimiter = ',';
};

struct Dataset {
    std::string source;
    std::string column;
    Scale scale;
    ProportionSample values;
};

/// Reads one numeric column of a delimited file with a header row. Percent
/// values are divided by 100 before the [0,1] check; "0", "1", "0.0",
/// "1.0" and (percent) "100" become exact endpoints. Blank lines are
/// skipped.
///
/// Throws DataError carrying the 1-based file line for unparseable cells,
/// values out of range and short rows, and for a missing column or file
/// without data rows.
Dataset load_csv(std::istream& in, const CsvOptions& options, const std::string& source = "<stream>");
Dataset load_csv(const std::string& path, const CsvOptions& options);

}  // namespace ulindley
