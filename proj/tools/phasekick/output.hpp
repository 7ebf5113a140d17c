#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace phasekick::cli {

enum class Format { Csv, Json };

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

// Derived quantities worth auditing that are not config keys (slopes,
// closing times). Written after the config echo.
using Extras = std::vector<std::pair<std::string, std::string>>;

void write_table(std::ostream& out, Format format, const Config& cfg,
                 const Extras& extras, const Table& table);

}  // namespace phasekick::cli
