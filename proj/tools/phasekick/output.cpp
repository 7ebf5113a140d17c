#include "output.hpp"

#include <nlohmann/json.hpp>

#include "phasekick/version.hpp"

namespace phasekick::cli {

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size()) {
        throw std::logic_error("row width does not match column count");
    }
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (const char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

void write_csv(std::ostream& out, const Config& cfg, const Extras& extras,
               const Table& table) {
    out << "# phasekick " << kVersion << " output, schema "
        << kOutputSchemaVersion << "\n";
    out << "# experiment = " << cfg.experiment << "\n";
    out << "# config_hash = " << cfg.hash() << "\n";
    for (const auto& [k, v] : cfg.values) {
        out << "# " << k << " = " << format_double(v) << "\n";
    }
    for (const auto& [k, v] : extras) {
        out << "# " << k << " = " << v << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (const auto* d = std::get_if<double>(&row[c])) {
                out << format_double(*d);
            } else {
                out << csv_escape(std::get<std::string>(row[c]));
            }
        }
        out << "\n";
    }
}

void write_json(std::ostream& out, const Config& cfg, const Extras& extras,
                const Table& table) {
    nlohmann::ordered_json doc;
    doc["config"]["experiment"] = cfg.experiment;
    auto& params = doc["config"]["parameters"];
    for (const auto& [k, v] : cfg.values) params[k] = v;

    auto& prov = doc["provenance"];
    prov["tool_version"] = kVersion;
    prov["schema_version"] = kOutputSchemaVersion;
    prov["config_hash"] = cfg.hash();
    for (const auto& [k, v] : extras) prov[k] = v;

    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* d = std::get_if<double>(&row[c])) {
                rec[table.columns[c]] = *d;
            } else {
                rec[table.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        doc["records"].push_back(std::move(rec));
    }
    out << doc.dump(2) << "\n";
}

}  // namespace

void write_table(std::ostream& out, Format format, const Config& cfg,
                 const Extras& extras, const Table& table) {
    if (format == Format::Csv) {
        write_csv(out, cfg, extras, table);
    } else {
        write_json(out, cfg, extras, table);
    }
}

}  // namespace phasekick::cli
