#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pvlcoe/errors.hpp"

namespace pvlcoe {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Rectangular result table. Doubles are emitted with 17 significant
/// digits so every value round-trips; identical tables emit identical
/// bytes.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// %.17g rendering: round-trippable, trailing zeros trimmed.
std::string format_double(double value);

/// RFC-4180-style CSV: header row, '.' decimal separator, quoting only
/// where a cell contains a comma, quote or newline.
std::string emit_csv(const Table& table);

/// Array of records keyed by column name.
std::string emit_json(const Table& table);

/// Dispatch on a format tag; accepts "csv" and "json".
std::string emit_table(const Table& table, const std::string& format);

}  // namespace pvlcoe
