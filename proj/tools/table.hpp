#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace gdl::cli {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

struct Column {
  std::string name;
  std::string unit;  ///< "1" for dimensionless
};

using Cell = std::variant<double, std::string>;

/// Rows of numbers (and labels) under a fixed list of columns.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// %.12g. Throws std::runtime_error on NaN or infinity.
std::string format_number(double v);

/// Same value rounded to 12 significant digits, for JSON output.
double round_12(double v);

void write_csv(std::ostream& os, const Table& table);

/// {"columns": [{"name", "unit"}...], "rows": [[...], ...]}
nlohmann::ordered_json to_json(const Table& table);

void write_table(std::ostream& os, const Table& table, Format format);

}  // namespace gdl::cli
