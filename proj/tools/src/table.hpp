#pragma once

// Column-oriented plot data and its CSV / JSON serializations.

#include <json.hpp>

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace cavity::cli {

struct Column {
    std::string name;
    std::string unit;
    std::variant<std::vector<double>, std::vector<std::string>> values;
};

struct Table {
    std::vector<Column> columns;
    std::size_t rows() const;
};

/// %.17g, with "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double x);

/// '#' header lines (one per entry of `header`, then "# name [unit],...")
/// followed by comma-separated rows.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const Table& table);

/// `meta` with one array per column added.
void write_json(std::ostream& os, nlohmann::ordered_json meta, const Table& table);

}  // namespace cavity::cli
