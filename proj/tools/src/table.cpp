#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cavity::cli {

std::size_t Table::rows() const {
    if (columns.empty()) return 0;
    const std::size_t n = std::visit([](const auto& v) { return v.size(); }, columns.front().values);
    for (const auto& c : columns) {
        if (std::visit([](const auto& v) { return v.size(); }, c.values) != n) {
            throw std::logic_error("table columns differ in length");
        }
    }
    return n;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const Table& table) {
    const std::size_t n = table.rows();
    for (const auto& line : header) os << "# " << line << '\n';
    os << "# ";
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        const Column& c = table.columns[k];
        os << (k ? "," : "") << c.name;
        if (!c.unit.empty()) os << " [" << c.unit << ']';
    }
    os << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < table.columns.size(); ++k) {
            if (k) os << ',';
            const auto& v = table.columns[k].values;
            if (const auto* d = std::get_if<std::vector<double>>(&v)) {
                os << format_number((*d)[i]);
            } else {
                os << std::get<std::vector<std::string>>(v)[i];
            }
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, nlohmann::ordered_json meta, const Table& table) {
    table.rows();
    nlohmann::ordered_json units = nlohmann::ordered_json::object();
    for (const auto& c : table.columns) {
        std::visit([&](const auto& v) { meta[c.name] = v; }, c.values);
        if (!c.unit.empty()) units[c.name] = c.unit;
    }
    if (!units.empty()) meta["units"] = units;
    os << meta.dump(2) << '\n';
}

}  // namespace cavity::cli
