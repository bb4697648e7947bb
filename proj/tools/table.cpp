#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace gdl::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the column count");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::runtime_error("refusing to emit a non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_12(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) os << ',';
    os << table.columns[c].name << " [" << table.columns[c].unit << ']';
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ',';
      if (const auto* v = std::get_if<double>(&row[c])) {
        os << format_number(*v);
      } else {
        os << std::get<std::string>(row[c]);
      }
    }
    os << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : table.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* v = std::get_if<double>(&cell)) {
        r.push_back(round_12(*v));
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  return j;
}

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::Csv) {
    write_csv(os, table);
  } else {
    os << to_json(table).dump(2) << '\n';
  }
}

}  // namespace gdl::cli
