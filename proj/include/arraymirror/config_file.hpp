#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace arraymirror {

// Flat TOML subset: `key = value` lines, '#' comments, double-quoted strings
// and plain numbers. No tables or arrays.
struct FileConfig {
  std::optional<double> lattice_constant;
  std::optional<double> gamma_r;
  std::optional<std::string> polarization;
  std::optional<double> theta;
  std::optional<std::string> plane;
  std::optional<double> omega_c;
  std::optional<double> delta_c;
};

// Throws InvalidArgument with the line number on malformed input or unknown
// keys.
FileConfig parse_config_text(std::string_view text);

// Throws IoError when the file cannot be read.
FileConfig load_config_file(const std::string& path);

}  // namespace arraymirror
