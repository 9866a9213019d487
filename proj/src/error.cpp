#include "arraymirror/error.hpp"

#include <array>
#include <utility>

namespace arraymirror {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadPolarization: return "BadPolarization";
    case ErrorCode::OutOfZone: return "OutOfZone";
    case ErrorCode::ZeroDisplacement: return "ZeroDisplacement";
    case ErrorCode::AnomalyDivergence: return "AnomalyDivergence";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DegeneratePoles: return "DegeneratePoles";
    case ErrorCode::NoSteadyState: return "NoSteadyState";
    case ErrorCode::NotDualBand: return "NotDualBand";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::NoConvergence || code == ErrorCode::NoSteadyState;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

std::string Flags::str() const {
  static constexpr std::array<std::pair<Flag, const char*>, 7> names{{
      {Flag::AnomalyProximity, "anomaly_proximity"},
      {Flag::AnomalyDivergence, "anomaly_divergence"},
      {Flag::NoConvergence, "no_convergence"},
      {Flag::Degenerate, "degenerate"},
      {Flag::DegeneratePoles, "degenerate_poles"},
      {Flag::NoSteadyState, "no_steady_state"},
      {Flag::OutsideLightCone, "outside_light_cone"},
  }};
  std::string out;
  for (const auto& [flag, name] : names) {
    if (!has(flag)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

Flag flag_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::AnomalyDivergence: return Flag::AnomalyDivergence;
    case ErrorCode::Degenerate: return Flag::Degenerate;
    case ErrorCode::DegeneratePoles: return Flag::DegeneratePoles;
    case ErrorCode::NoSteadyState: return Flag::NoSteadyState;
    default: return Flag::NoConvergence;
  }
}

}  // namespace arraymirror
