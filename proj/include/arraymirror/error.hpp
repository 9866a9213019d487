#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arraymirror {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  BadPolarization,
  OutOfZone,
  ZeroDisplacement,
  AnomalyDivergence,
  NoConvergence,
  Degenerate,
  DegeneratePoles,
  NoSteadyState,
  NotDualBand,
  IoError,
};

std::string_view to_string(ErrorCode code);

// NoConvergence and NoSteadyState map to CLI exit code 2, everything else to 1.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Non-fatal conditions carried alongside a value (table rows, mode points).
enum class Flag : std::uint32_t {
  AnomalyProximity = 1u << 0,
  AnomalyDivergence = 1u << 1,
  NoConvergence = 1u << 2,
  Degenerate = 1u << 3,
  DegeneratePoles = 1u << 4,
  NoSteadyState = 1u << 5,
  OutsideLightCone = 1u << 6,
};

class Flags {
 public:
  constexpr Flags() = default;
  constexpr Flags(Flag f) : bits_(static_cast<std::uint32_t>(f)) {}

  constexpr void set(Flag f) { bits_ |= static_cast<std::uint32_t>(f); }
  constexpr bool has(Flag f) const { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
  constexpr bool any() const { return bits_ != 0; }
  constexpr std::uint32_t bits() const { return bits_; }

  constexpr Flags& operator|=(Flags other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr Flags operator|(Flags a, Flags b) { return a |= b; }
  friend constexpr bool operator==(Flags a, Flags b) = default;

  // "anomaly_proximity|no_convergence", empty when clear.
  std::string str() const;

 private:
  std::uint32_t bits_ = 0;
};

Flag flag_for(ErrorCode code);

}  // namespace arraymirror
