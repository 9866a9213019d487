#include "arraymirror/config_file.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "arraymirror/error.hpp"

namespace arraymirror {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "config line " + std::to_string(line) + ": " + what);
}

double as_number(std::string_view v, int line) {
  const std::string tmp(v);
  char* end = nullptr;
  const double x = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(x)) fail(line, "expected a number");
  return x;
}

std::string as_string(std::string_view v, int line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') fail(line, "expected a quoted string");
  const auto inner = v.substr(1, v.size() - 2);
  if (inner.find('"') != std::string_view::npos || inner.find('\\') != std::string_view::npos) {
    fail(line, "escapes are not supported");
  }
  return std::string(inner);
}

}  // namespace

FileConfig parse_config_text(std::string_view text) {
  FileConfig cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "lattice_constant") cfg.lattice_constant = as_number(value, line_no);
    else if (key == "gamma_r") cfg.gamma_r = as_number(value, line_no);
    else if (key == "theta") cfg.theta = as_number(value, line_no);
    else if (key == "omega_c") cfg.omega_c = as_number(value, line_no);
    else if (key == "delta_c") cfg.delta_c = as_number(value, line_no);
    else if (key == "polarization") cfg.polarization = as_string(value, line_no);
    else if (key == "plane") cfg.plane = as_string(value, line_no);
    else fail(line_no, "unknown key '" + std::string(key) + "'");
  }
  return cfg;
}

FileConfig load_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::IoError, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace arraymirror
