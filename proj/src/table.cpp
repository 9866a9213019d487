#include "arraymirror/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace arraymirror {

namespace {

constexpr const char* kVersion = "1.0.0";

double parse_number(std::string_view s, std::string_view what) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + std::string(what) + " from '" + tmp + "'");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

std::vector<double> axis_values(const Axis& axis) {
  if (axis.count < 2) throw Error(ErrorCode::InvalidArgument, "axis '" + axis.name + "' needs at least 2 points");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
    throw Error(ErrorCode::InvalidArgument, "axis '" + axis.name + "' has non-finite bounds");
  }
  std::vector<double> out(static_cast<std::size_t>(axis.count));
  const double step = (axis.max - axis.min) / (axis.count - 1);
  for (int i = 0; i < axis.count; ++i) out[static_cast<std::size_t>(i)] = axis.min + step * i;
  out.back() = axis.max;
  return out;
}

Axis parse_axis(std::string_view name, std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "range for '" + std::string(name) + "' must be min:max:count");
  }
  Axis axis;
  axis.name = std::string(name);
  axis.min = parse_number(text.substr(0, a), "range minimum");
  axis.max = parse_number(text.substr(a + 1, b - a - 1), "range maximum");
  const auto cnt = text.substr(b + 1);
  int count = 0;
  const auto [ptr, ec] = std::from_chars(cnt.data(), cnt.data() + cnt.size(), count);
  if (ec != std::errc() || ptr != cnt.data() + cnt.size()) {
    throw Error(ErrorCode::InvalidArgument, "range count for '" + std::string(name) + "' must be an integer");
  }
  axis.count = count;
  axis_values(axis);  // validates
  return axis;
}

void SweepTable::add_row(std::vector<double> values, Flags f) {
  if (values.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "row width does not match the column count");
  }
  rows.push_back(std::move(values));
  flags.push_back(f);
}

std::size_t SweepTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "no column named '" + std::string(name) + "'");
}

std::vector<double> SweepTable::column_values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

TableFormat parse_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown output format '" + std::string(name) + "'");
}

nlohmann::ordered_json config_meta(const SystemConfig& config) {
  nlohmann::ordered_json j;
  j["lattice_constant"] = config.lattice_constant();
  j["wavelength"] = config.wavelength();
  j["wavenumber"] = config.wavenumber();
  j["gamma_e"] = config.gamma_e();
  j["gamma_r"] = config.gamma_r();
  j["dipole"] = {config.dipole().x, config.dipole().y, config.dipole().z};
  return j;
}

std::string render_csv(const SweepTable& table) {
  std::string out;
  for (const auto& c : table.columns) {
    out += c;
    out += ',';
  }
  out += "flags\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (double v : table.rows[i]) {
      out += format_number(v);
      out += ',';
    }
    out += table.flags[i].str();
    out += '\n';
  }
  return out;
}

std::string render_json(const SweepTable& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = table.meta;
  meta["version"] = kVersion;
  meta["units"] = "reduced: lengths in lambda, rates and detunings in Gamma_e";
  doc["meta"] = meta;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) col.push_back(r[c]);
    data[table.columns[c]] = std::move(col);
  }
  nlohmann::ordered_json fl = nlohmann::ordered_json::array();
  for (const auto& f : table.flags) fl.push_back(f.str());
  data["flags"] = std::move(fl);
  doc["data"] = std::move(data);
  return doc.dump(2) + "\n";
}

void write_table(const SweepTable& table, TableFormat format, const std::string& path) {
  if (table.rows.empty()) throw Error(ErrorCode::InvalidArgument, "refusing to write an empty table");
  const std::string text = format == TableFormat::Csv ? render_csv(table) : render_json(table);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

}  // namespace arraymirror
