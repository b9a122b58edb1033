#include "pvlcoe/table.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace pvlcoe {

namespace {

void check(const Table& table) {
    if (table.columns.empty()) throw ValidationError("table has no columns");
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw ValidationError("table row width does not match the header");
        }
    }
}

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string cell_text(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const int written = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(written));
}

std::string emit_csv(const Table& table) {
    check(table);
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_quote(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_quote(cell_text(row[c]));
        }
        out += '\n';
    }
    return out;
}

std::string emit_json(const Table& table) {
    check(table);
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* d = std::get_if<double>(&row[c])) {
                record[table.columns[c]] = *d;
            } else if (const auto* i = std::get_if<std::int64_t>(&row[c])) {
                record[table.columns[c]] = *i;
            } else {
                record[table.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        records.push_back(std::move(record));
    }
    return records.dump(2) + "\n";
}

std::string emit_table(const Table& table, const std::string& format) {
    if (format == "csv") return emit_csv(table);
    if (format == "json") return emit_json(table);
    throw ValidationError("unsupported table format \"" + format + "\" (expected csv or json)");
}

}  // namespace pvlcoe
