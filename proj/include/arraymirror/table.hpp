#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "arraymirror/error.hpp"
#include "arraymirror/units.hpp"
#include "json.hpp"

namespace arraymirror {

// Inclusive range min:max:count.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 2;
};

// Throws InvalidArgument for count < 2 or non-finite bounds.
std::vector<double> axis_values(const Axis& axis);

// Parses "min:max:count".
Axis parse_axis(std::string_view name, std::string_view text);

// Rectangular result grid. Numeric columns plus a trailing flags column.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Flags> flags;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  std::size_t size() const { return rows.size(); }
  void add_row(std::vector<double> values, Flags f = {});
  std::size_t column(std::string_view name) const;  // throws InvalidArgument
  std::vector<double> column_values(std::string_view name) const;
};

enum class TableFormat { Csv, Json };

TableFormat parse_format(std::string_view name);

nlohmann::ordered_json config_meta(const SystemConfig& config);

std::string render_csv(const SweepTable& table);
std::string render_json(const SweepTable& table);

// Throws InvalidArgument for an empty table, IoError when the file cannot be
// written.
void write_table(const SweepTable& table, TableFormat format, const std::string& path);

}  // namespace arraymirror
