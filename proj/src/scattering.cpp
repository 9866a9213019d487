#include "arraymirror/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "arraymirror/bands.hpp"
#include "arraymirror/parallel.hpp"

namespace arraymirror {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kSpectrumColumns = {"delta_p", "R_pp", "R_ps", "R_sp", "R_ss", "T_pp",
                                                   "T_ps",    "T_sp", "T_ss", "sum_RT", "nonspecular_loss"};

int driven_index(const ProbeGeometry& g) { return g.polarization == ProbePolarization::P ? 0 : 1; }

std::vector<double> spectrum_values(const ScatteringResult& r) {
  const double sum = r.sum_rt(driven_index(r.geometry));
  return {r.delta_p, r.R[0][0], r.R[0][1], r.R[1][0], r.R[1][1], r.T[0][0], r.T[0][1], r.T[1][0], r.T[1][1],
          sum,       1.0 - sum};
}

ScatteringResult failed_result(double delta_p, const ProbeGeometry& geometry, const DriveField& drive, Flags flags) {
  ScatteringResult r;
  r.delta_p = delta_p;
  r.geometry = geometry;
  r.drive = drive;
  r.flags = flags;
  for (auto* m : {&r.R, &r.T}) {
    for (auto& row : *m) row.fill(kNaN);
  }
  return r;
}

// Scattering at one point; numerical failures become flagged NaN rows.
ScatteringResult result_or_flag(double delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                                const SystemConfig& config, const ModePoint& mode) {
  try {
    return scattering_matrices(delta_p, geometry, drive, config, mode);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Degenerate) throw;
    return failed_result(delta_p, geometry, drive, mode.flags | Flags(Flag::Degenerate));
  }
}

}  // namespace

PolarizationBasis sp_basis(const ProbeGeometry& geometry, const SystemConfig& /*config*/) {
  const Vec2 u = incidence_direction(geometry.plane);
  const double c = std::cos(geometry.theta);
  const double s = std::sin(geometry.theta);
  PolarizationBasis b;
  b.p_plus = {c * u.x, c * u.y, -s};
  b.p_minus = {-c * u.x, -c * u.y, -s};
  b.s_plus = {u.y, -u.x, 0.0};
  b.s_minus = b.s_plus;
  return b;
}

cplx scattering_prefactor(const ProbeGeometry& geometry, const SystemConfig& config) {
  const double d = config.lattice_constant();
  const double k = config.wavenumber();
  const double kz = k * std::cos(geometry.theta);
  return {0.0, 1.5 * std::numbers::pi * config.gamma_e() / (d * d * k * kz)};
}

ScatteringResult scattering_matrices(double delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                                     const SystemConfig& config, const ModePoint& mode) {
  if (mode.flags.has(Flag::AnomalyDivergence)) {
    throw Error(ErrorCode::AnomalyDivergence, "collective decay rate diverges at this operating point");
  }
  const EitParams params = make_eit_params(drive, mode, config);
  const cplx chi = chi_reduced(delta_p, params);
  const cplx a = scattering_prefactor(geometry, config) * chi;
  const PolarizationBasis b = sp_basis(geometry, config);
  const Vec3& pol = config.dipole();
  const std::array<double, 2> in{dot(b.p_plus, pol), dot(b.s_plus, pol)};
  const std::array<double, 2> out_plus{dot(b.p_plus, pol), dot(b.s_plus, pol)};
  const std::array<double, 2> out_minus{dot(b.p_minus, pol), dot(b.s_minus, pol)};

  ScatteringResult r;
  r.delta_p = delta_p;
  r.geometry = geometry;
  r.drive = drive;
  r.flags = mode.flags;
  for (std::size_t mu = 0; mu < 2; ++mu) {
    for (std::size_t nu = 0; nu < 2; ++nu) {
      r.s_plus[mu][nu] = a * (out_plus[mu] * in[nu]);
      r.s_minus[mu][nu] = a * (out_minus[mu] * in[nu]);
      r.R[mu][nu] = std::norm(r.s_minus[mu][nu]);
      r.T[mu][nu] = std::norm((mu == nu ? 1.0 : 0.0) + r.s_plus[mu][nu]);
    }
  }
  return r;
}

ScatteringResult scattering_matrices(double delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                                     const SystemConfig& config, const AccelParams& accel) {
  return scattering_matrices(delta_p, geometry, drive, config, directional_mode(geometry, config, accel));
}

SweepTable rt_spectrum(const std::vector<double>& delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                       const SystemConfig& config, const AccelParams& accel) {
  SweepTable t;
  t.columns = kSpectrumColumns;
  const ModePoint mode = mode_or_flag(incidence_bloch(geometry, config), config, accel);
  for (double dp : delta_p) {
    if (mode.flags.has(Flag::AnomalyDivergence) || std::isnan(mode.delta)) {
      t.add_row(spectrum_values(failed_result(dp, geometry, drive, mode.flags)), mode.flags);
      continue;
    }
    const ScatteringResult r = result_or_flag(dp, geometry, drive, config, mode);
    t.add_row(spectrum_values(r), r.flags);
  }
  t.meta["config"] = config_meta(config);
  t.meta["theta"] = geometry.theta;
  t.meta["plane"] = std::string(to_string(geometry.plane));
  t.meta["probe_polarization"] = std::string(to_string(geometry.polarization));
  t.meta["omega_c"] = drive.omega_c.real();
  t.meta["delta_c"] = drive.delta_c;
  t.meta["delta_k"] = mode.delta;
  t.meta["gamma_k"] = mode.gamma;
  return t;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
  }
  return out;
}

double fwhm_at(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak) {
  const double half = 0.5 * y[peak];
  std::size_t j = peak;
  while (j > 0 && y[j] > half) --j;
  const double left =
      y[j] > half ? x[j] : x[j] + (half - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j]);
  j = peak;
  while (j + 1 < y.size() && y[j] > half) ++j;
  const double right =
      y[j] > half ? x[j] : x[j - 1] + (half - y[j - 1]) * (x[j] - x[j - 1]) / (y[j] - y[j - 1]);
  return right - left;
}

std::pair<BandDescriptor, BandDescriptor> extract_bands(const std::vector<double>& delta_p,
                                                        const std::vector<double>& reflectivity, double min_peak) {
  if (delta_p.size() != reflectivity.size()) {
    throw Error(ErrorCode::InvalidArgument, "detuning and reflectivity traces differ in length");
  }
  std::vector<std::size_t> peaks;
  for (std::size_t i : local_maxima(reflectivity)) {
    if (reflectivity[i] > min_peak) peaks.push_back(i);
  }
  if (peaks.size() < 2) {
    throw Error(ErrorCode::NotDualBand,
                "found " + std::to_string(peaks.size()) + " reflection maxima above " + std::to_string(min_peak));
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return reflectivity[a] > reflectivity[b]; });
  BandDescriptor a{delta_p[peaks[0]], reflectivity[peaks[0]], fwhm_at(delta_p, reflectivity, peaks[0])};
  BandDescriptor b{delta_p[peaks[1]], reflectivity[peaks[1]], fwhm_at(delta_p, reflectivity, peaks[1])};
  if (b.fwhm < a.fwhm) std::swap(a, b);
  a.kind = BandKind::Narrow;
  b.kind = BandKind::Broad;
  return {a, b};
}

DiffractionThreshold diffraction_threshold(const ProbeGeometry& geometry) {
  const double d = kWavelength / (1.0 + std::sin(geometry.theta));
  return geometry.plane == Plane::XZ ? DiffractionThreshold{d, 1, 0} : DiffractionThreshold{d, 0, 1};
}

OrderContribution order_contribution_xx(double d, double theta) {
  if (!(d > 0.0)) throw Error(ErrorCode::OutOfRange, "lattice constant must be positive");
  if (!(theta >= 0.0 && theta <= kMaxIncidenceAngle)) {
    throw Error(ErrorCode::OutOfRange, "incident angle must lie in [0, 0.49 pi]");
  }
  const double k = kProbeWavenumber;
  const double u = kWavelength / d - std::sin(theta);  // |p| / k for order (1,0)
  const double one_minus = (1.0 - u) * (1.0 + u);
  OrderContribution out;
  if (std::abs(one_minus) < 1e-9) {
    out.value = 0.0;
    out.flags.set(Flag::AnomalyProximity);
  } else if (one_minus > 0.0) {
    out.value = cplx(0.0, std::sqrt(one_minus) / (2.0 * d * d * k));
  } else {
    out.value = cplx(-std::sqrt(-one_minus) / (2.0 * d * d * k), 0.0);
  }
  return out;
}

SweepParam parse_sweep_param(std::string_view name) {
  if (name == "omega_c") return SweepParam::OmegaC;
  if (name == "delta_c") return SweepParam::DeltaC;
  if (name == "theta") return SweepParam::Theta;
  if (name == "d") return SweepParam::LatticeConstant;
  throw Error(ErrorCode::InvalidArgument, "unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::OmegaC: return "omega_c";
    case SweepParam::DeltaC: return "delta_c";
    case SweepParam::Theta: return "theta";
    case SweepParam::LatticeConstant: return "d";
  }
  return "";
}

SweepTable spectra_sweep(const std::vector<SweepAxis>& axes, const std::vector<double>& delta_p,
                         const ProbeGeometry& geometry, const DriveField& drive, const SystemConfig& config,
                         const AccelParams& accel) {
  if (axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "at most two outer sweep axes");
  if (delta_p.empty()) throw Error(ErrorCode::InvalidArgument, "empty probe detuning grid");
  std::size_t cells = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw Error(ErrorCode::InvalidArgument, "empty sweep axis");
    cells *= a.values.size();
  }

  // One spectrum per outer cell, computed independently, emitted in order.
  std::vector<SweepTable> parts(cells);
  std::vector<std::vector<double>> outer(cells);
  std::vector<ProbeGeometry> geometries(cells, geometry);
  std::vector<DriveField> drives(cells, drive);
  std::vector<SystemConfig> configs(cells, config);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rem = c;
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      idx[a] = rem % axes[a].values.size();
      rem /= axes[a].values.size();
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double v = axes[a].values[idx[a]];
      outer[c].push_back(v);
      switch (axes[a].param) {
        case SweepParam::OmegaC: drives[c].omega_c = v; break;
        case SweepParam::DeltaC: drives[c].delta_c = v; break;
        case SweepParam::Theta:
          geometries[c] = make_geometry(v, geometry.plane, geometry.polarization);
          break;
        case SweepParam::LatticeConstant: configs[c] = configs[c].with_lattice_constant(v); break;
      }
    }
  }
  parallel_for(cells, [&](std::size_t c) {
    parts[c] = rt_spectrum(delta_p, geometries[c], drives[c], configs[c], accel);
  });

  SweepTable t;
  for (const auto& a : axes) t.columns.emplace_back(to_string(a.param));
  t.columns.insert(t.columns.end(), kSpectrumColumns.begin(), kSpectrumColumns.end());
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t i = 0; i < parts[c].rows.size(); ++i) {
      std::vector<double> row = outer[c];
      row.insert(row.end(), parts[c].rows[i].begin(), parts[c].rows[i].end());
      t.add_row(std::move(row), parts[c].flags[i]);
    }
  }
  t.meta["config"] = config_meta(config);
  t.meta["theta"] = geometry.theta;
  t.meta["plane"] = std::string(to_string(geometry.plane));
  t.meta["probe_polarization"] = std::string(to_string(geometry.polarization));
  t.meta["omega_c"] = drive.omega_c.real();
  t.meta["delta_c"] = drive.delta_c;
  nlohmann::ordered_json ax = nlohmann::ordered_json::array();
  for (const auto& a : axes) ax.push_back({{"name", std::string(to_string(a.param))}, {"count", a.values.size()}});
  t.meta["axes"] = ax;
  return t;
}

}  // namespace arraymirror
