#include "arraymirror/units.hpp"

#include <cmath>
#include <string>

#include "arraymirror/error.hpp"

namespace arraymirror {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SystemConfig make_config(double d, double gamma_r, Vec3 pol) {
  if (!std::isfinite(d) || !std::isfinite(gamma_r)) {
    throw Error(ErrorCode::OutOfRange, "non-finite configuration value");
  }
  if (!(d > 0.0 && d < kWavelength)) {
    throw Error(ErrorCode::OutOfRange, "lattice constant must lie in (0, lambda), got " + fmt_double(d));
  }
  if (gamma_r < 0.0) {
    throw Error(ErrorCode::OutOfRange, "gamma_r must be non-negative, got " + fmt_double(gamma_r));
  }
  const double n = norm(pol);
  if (!std::isfinite(n) || n == 0.0) {
    throw Error(ErrorCode::BadPolarization, "dipole orientation has zero or non-finite length");
  }
  const Vec3 unit = (1.0 / n) * pol;
  if (std::abs(norm(unit) - 1.0) > 1e-9) {
    throw Error(ErrorCode::BadPolarization, "dipole orientation cannot be normalized");
  }
  return SystemConfig(d, gamma_r, unit);
}

SystemConfig SystemConfig::with_lattice_constant(double d) const {
  return make_config(d, gamma_r_, dipole_);
}

Vec3 parse_dipole(std::string_view name) {
  if (name == "x") return kDipoleX;
  if (name == "z") return kDipoleZ;
  throw Error(ErrorCode::BadPolarization, "unknown dipole preset '" + std::string(name) + "' (expected x or z)");
}

SystemConfig from_lab_units(const LabParameters& lab, Vec3 pol) {
  return make_config(lab.lattice_constant_m / lab.wavelength_m,
                     lab.gamma_r_rad_per_s / lab.gamma_e_rad_per_s, pol);
}

std::string_view to_string(Plane plane) { return plane == Plane::XZ ? "xz" : "yz"; }

std::string_view to_string(ProbePolarization pol) { return pol == ProbePolarization::P ? "p" : "s"; }

Plane parse_plane(std::string_view name) {
  if (name == "xz") return Plane::XZ;
  if (name == "yz") return Plane::YZ;
  throw Error(ErrorCode::InvalidArgument, "unknown incidence plane '" + std::string(name) + "'");
}

ProbePolarization parse_probe_polarization(std::string_view name) {
  if (name == "p") return ProbePolarization::P;
  if (name == "s") return ProbePolarization::S;
  throw Error(ErrorCode::InvalidArgument, "unknown probe polarization '" + std::string(name) + "'");
}

ProbeGeometry make_geometry(double theta, Plane plane, ProbePolarization pol) {
  if (!(theta >= 0.0 && theta <= kMaxIncidenceAngle)) {
    throw Error(ErrorCode::OutOfRange, "incident angle must lie in [0, 0.49 pi], got " + fmt_double(theta));
  }
  return {theta, plane, pol};
}

BlochVector make_bloch(double kx, double ky, const SystemConfig& config) {
  if (!std::isfinite(kx) || !std::isfinite(ky)) {
    throw Error(ErrorCode::InvalidArgument, "Bloch vector components must be finite");
  }
  return {kx, ky, std::hypot(kx, ky) < config.wavenumber()};
}

Vec2 incidence_direction(Plane plane) {
  return plane == Plane::XZ ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
}

BlochVector incidence_bloch(const ProbeGeometry& geometry, const SystemConfig& config) {
  const double kpar = config.wavenumber() * std::sin(geometry.theta);
  const Vec2 u = incidence_direction(geometry.plane);
  return make_bloch(kpar * u.x, kpar * u.y, config);
}

BlochVector symmetry_point(char label, const SystemConfig& config) {
  const double edge = std::numbers::pi / config.lattice_constant();
  switch (label) {
    case 'G': return make_bloch(0.0, 0.0, config);
    case 'X': return make_bloch(edge, 0.0, config);
    case 'Y': return make_bloch(0.0, edge, config);
    case 'M': return make_bloch(edge, edge, config);
    default:
      throw Error(ErrorCode::InvalidArgument, std::string("unknown symmetry point '") + label + "'");
  }
}

std::vector<BlochVector> path_waypoints(std::string_view labels, const SystemConfig& config) {
  std::vector<BlochVector> out;
  out.reserve(labels.size());
  for (char c : labels) out.push_back(symmetry_point(c, config));
  return out;
}

std::vector<PathPoint> bz_path(const std::vector<BlochVector>& waypoints,
                               int samples_per_segment,
                               const SystemConfig& config) {
  if (waypoints.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a path needs at least two waypoints");
  }
  if (samples_per_segment < 2) {
    throw Error(ErrorCode::InvalidArgument, "samples_per_segment must be at least 2");
  }
  // Small slack so that the zone corners computed as pi/d are accepted.
  const double edge = std::numbers::pi / config.lattice_constant() * (1.0 + 1e-12);
  for (const auto& w : waypoints) {
    if (std::abs(w.kx) > edge || std::abs(w.ky) > edge) {
      throw Error(ErrorCode::OutOfZone, "waypoint (" + fmt_double(w.kx) + ", " + fmt_double(w.ky) +
                                            ") lies outside the first Brillouin zone");
    }
  }

  std::vector<PathPoint> path;
  path.reserve((waypoints.size() - 1) * static_cast<std::size_t>(samples_per_segment - 1) + 1);
  double arc = 0.0;
  path.push_back({make_bloch(waypoints.front().kx, waypoints.front().ky, config), 0.0});
  for (std::size_t seg = 0; seg + 1 < waypoints.size(); ++seg) {
    const Vec2 a = waypoints[seg].vec();
    const Vec2 b = waypoints[seg + 1].vec();
    const double length = norm(b - a);
    const int last = samples_per_segment - 1;
    for (int i = 1; i <= last; ++i) {
      const double t = static_cast<double>(i) / last;
      // Endpoints are copied exactly so every waypoint appears verbatim.
      const Vec2 k = (i == last) ? b : a + t * (b - a);
      path.push_back({make_bloch(k.x, k.y, config), arc + t * length});
    }
    arc += length;
  }
  return path;
}

}  // namespace arraymirror
