#include "arraymirror/bands.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "arraymirror/parallel.hpp"

namespace arraymirror {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<ModePoint> modes_for(const std::vector<BlochVector>& ks, const std::vector<SystemConfig>& configs,
                                 const AccelParams& accel) {
  std::vector<ModePoint> out(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) { out[i] = mode_or_flag(ks[i], configs[i], accel); });
  return out;
}

}  // namespace

ModePoint mode_or_flag(const BlochVector& k, const SystemConfig& config, const AccelParams& accel) {
  try {
    return eta(k, config, accel);
  } catch (const Error& e) {
    if (!is_numerical_failure(e.code())) throw;
    ModePoint mp;
    mp.k = k;
    const DecayRate g = gamma_k(k, config);
    mp.gamma = g.value;
    mp.propagating_orders = g.propagating_orders;
    mp.delta = kNaN;
    mp.shift_error = kNaN;
    mp.eta = cplx(kNaN, -0.5 * mp.gamma);
    mp.flags = g.flags;
    mp.flags.set(flag_for(e.code()));
    return mp;
  }
}

BandTable band_structure(const std::vector<PathPoint>& path, const std::vector<BlochVector>& waypoints,
                         const SystemConfig& config, const AccelParams& accel) {
  std::vector<BlochVector> ks;
  ks.reserve(path.size());
  for (const auto& p : path) ks.push_back(p.k);
  const auto modes = modes_for(ks, std::vector<SystemConfig>(ks.size(), config), accel);
  BandTable table;
  table.waypoints = waypoints;
  table.config = config;
  table.rows.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) table.rows.push_back({path[i].arc_length, modes[i]});
  return table;
}

SweepTable to_table(const BandTable& bands) {
  SweepTable t;
  t.columns = {"arc_length", "kx", "ky", "delta_k", "gamma_k", "inside_light_cone", "propagating_orders"};
  for (const auto& r : bands.rows) {
    const ModePoint& m = r.mode;
    t.add_row({r.arc_length, m.k.kx, m.k.ky, m.delta, m.gamma, m.k.inside_light_cone ? 1.0 : 0.0,
               static_cast<double>(m.propagating_orders)},
              m.flags);
  }
  if (bands.config) t.meta["config"] = config_meta(*bands.config);
  nlohmann::ordered_json wp = nlohmann::ordered_json::array();
  for (const auto& w : bands.waypoints) wp.push_back({w.kx, w.ky});
  t.meta["waypoints"] = wp;
  return t;
}

ModePoint directional_mode(const ProbeGeometry& geometry, const SystemConfig& config, const AccelParams& accel) {
  return eta(incidence_bloch(geometry, config), config, accel);
}

SweepTable mode_vs_angle(const std::vector<double>& thetas, Plane plane, const SystemConfig& config,
                         const AccelParams& accel) {
  std::vector<BlochVector> ks;
  for (double th : thetas) ks.push_back(incidence_bloch(make_geometry(th, plane), config));
  const auto modes = modes_for(ks, std::vector<SystemConfig>(ks.size(), config), accel);
  SweepTable t;
  t.columns = {"theta", "kx", "ky", "delta_k", "gamma_k", "shift_error", "propagating_orders"};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const ModePoint& m = modes[i];
    t.add_row({thetas[i], m.k.kx, m.k.ky, m.delta, m.gamma, m.shift_error,
               static_cast<double>(m.propagating_orders)},
              m.flags);
  }
  t.meta["config"] = config_meta(config);
  t.meta["plane"] = std::string(to_string(plane));
  return t;
}

SweepTable mode_vs_lattice(const std::vector<double>& ds, const ProbeGeometry& geometry, const SystemConfig& config,
                           const AccelParams& accel) {
  std::vector<SystemConfig> configs;
  std::vector<BlochVector> ks;
  for (double d : ds) {
    configs.push_back(config.with_lattice_constant(d));
    ks.push_back(incidence_bloch(geometry, configs.back()));
  }
  const auto modes = modes_for(ks, configs, accel);
  SweepTable t;
  t.columns = {"d", "delta_k", "gamma_k", "shift_error", "propagating_orders"};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const ModePoint& m = modes[i];
    t.add_row({ds[i], m.delta, m.gamma, m.shift_error, static_cast<double>(m.propagating_orders)}, m.flags);
  }
  t.meta["config"] = config_meta(config);
  t.meta["theta"] = geometry.theta;
  t.meta["plane"] = std::string(to_string(geometry.plane));
  return t;
}

std::vector<double> default_theta_grid() {
  return axis_values({"theta", 0.0, 0.45 * std::numbers::pi, 181});
}

std::vector<double> default_lattice_grid() { return axis_values({"d", 0.05, 0.95, 181}); }

}  // namespace arraymirror
