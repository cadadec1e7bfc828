#include "cli/table.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace casym::cli {

namespace {

std::string cell_text(const ordered_json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "";
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char ch : s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + "\"";
    }
    return v.dump();
}

// Non-finite values are not representable in JSON.
ordered_json json_cell(const ordered_json& v) {
    if (v.is_number_float() && !std::isfinite(v.get<double>())) return format_double(v.get<double>());
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

void Table::write_csv(std::ostream& os) const {
    os << "# " << header.dump() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    ordered_json doc;
    doc["header"] = header;
    doc["columns"] = columns;
    auto& out_rows = doc["rows"] = ordered_json::array();
    for (const auto& row : rows) {
        auto r = ordered_json::array();
        for (const auto& cell : row) r.push_back(json_cell(cell));
        out_rows.push_back(std::move(r));
    }
    os << doc.dump(2) << '\n';
}

void Table::write(std::ostream& os, const std::string& format) const {
    if (format == "json")
        write_json(os);
    else
        write_csv(os);
}

}  // namespace casym::cli
