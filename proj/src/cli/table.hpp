#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace casym::cli {

using nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Column-oriented artifact: a metadata header plus rows of scalar cells.
struct Table {
    ordered_json header = ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
    void write(std::ostream& os, const std::string& format) const;
};

}  // namespace casym::cli
