#pragma once

#include <optional>
#include <vector>

#include "arraymirror/green.hpp"
#include "arraymirror/table.hpp"
#include "arraymirror/units.hpp"

namespace arraymirror {

struct BandRow {
  double arc_length = 0.0;
  ModePoint mode;
};

struct BandTable {
  std::vector<BandRow> rows;
  std::vector<BlochVector> waypoints;
  std::optional<SystemConfig> config;
};

// eta() that turns numerical failures into a flagged row with NaN values
// instead of throwing. Validation errors still throw.
ModePoint mode_or_flag(const BlochVector& k, const SystemConfig& config, const AccelParams& accel = {});

BandTable band_structure(const std::vector<PathPoint>& path, const std::vector<BlochVector>& waypoints,
                         const SystemConfig& config, const AccelParams& accel = {});

SweepTable to_table(const BandTable& bands);

ModePoint directional_mode(const ProbeGeometry& geometry, const SystemConfig& config,
                           const AccelParams& accel = {});

// Columns theta, kx, ky, delta_k, gamma_k, shift_error, propagating_orders.
SweepTable mode_vs_angle(const std::vector<double>& thetas, Plane plane, const SystemConfig& config,
                         const AccelParams& accel = {});

// Columns d, delta_k, gamma_k, shift_error, propagating_orders.
SweepTable mode_vs_lattice(const std::vector<double>& ds, const ProbeGeometry& geometry,
                           const SystemConfig& config, const AccelParams& accel = {});

// 181 points on [0, 0.45 pi] and on [0.05, 0.95].
std::vector<double> default_theta_grid();
std::vector<double> default_lattice_grid();

}  // namespace arraymirror
