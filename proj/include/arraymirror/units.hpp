#pragma once

// Reduced units used throughout the library: lengths in units of the probe
// wavelength (lambda = 1), rates and detunings in units of the single-atom
// linewidth Gamma_e (Gamma_e = 1). Wavenumbers are in radians per lambda, so
// the probe wavenumber is k' = 2 pi.

#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

#include "arraymirror/vec.hpp"

namespace arraymirror {

inline constexpr double kWavelength = 1.0;
inline constexpr double kGammaE = 1.0;
inline constexpr double kProbeWavenumber = 2.0 * std::numbers::pi / kWavelength;
inline constexpr double kMaxIncidenceAngle = 0.49 * std::numbers::pi;

inline constexpr Vec3 kDipoleX{1.0, 0.0, 0.0};
inline constexpr Vec3 kDipoleZ{0.0, 0.0, 1.0};

// Validated physical configuration of the array. Construct through
// make_config(); the fields are immutable afterwards.
class SystemConfig {
 public:
  double lattice_constant() const { return d_; }
  double wavelength() const { return kWavelength; }
  double wavenumber() const { return kProbeWavenumber; }
  double gamma_e() const { return kGammaE; }
  double gamma_r() const { return gamma_r_; }
  const Vec3& dipole() const { return dipole_; }

  // Same physics with another lattice constant (revalidated).
  SystemConfig with_lattice_constant(double d) const;

 private:
  friend SystemConfig make_config(double d, double gamma_r, Vec3 pol);
  SystemConfig(double d, double gamma_r, Vec3 dipole) : d_(d), gamma_r_(gamma_r), dipole_(dipole) {}

  double d_;
  double gamma_r_;
  Vec3 dipole_;
};

// Throws OutOfRange for d outside (0, 1) or gamma_r < 0, BadPolarization when
// the dipole cannot be normalized to a unit vector.
SystemConfig make_config(double d, double gamma_r, Vec3 pol);

// "x" / "z" presets. Throws BadPolarization for anything else.
Vec3 parse_dipole(std::string_view name);

// Laboratory values (SI lengths, angular frequencies) to reduced units.
struct LabParameters {
  double wavelength_m;
  double lattice_constant_m;
  double gamma_e_rad_per_s;
  double gamma_r_rad_per_s;
};
SystemConfig from_lab_units(const LabParameters& lab, Vec3 pol);

enum class Plane { XZ, YZ };
enum class ProbePolarization { P, S };

std::string_view to_string(Plane plane);
std::string_view to_string(ProbePolarization pol);
Plane parse_plane(std::string_view name);
ProbePolarization parse_probe_polarization(std::string_view name);

struct ProbeGeometry {
  double theta = 0.0;  // radians, [0, 0.49 pi]
  Plane plane = Plane::XZ;
  ProbePolarization polarization = ProbePolarization::P;
};

// Throws OutOfRange if theta is outside [0, 0.49 pi].
ProbeGeometry make_geometry(double theta, Plane plane, ProbePolarization pol = ProbePolarization::P);

struct BlochVector {
  double kx = 0.0;
  double ky = 0.0;
  bool inside_light_cone = true;

  Vec2 vec() const { return {kx, ky}; }
  double magnitude() const { return norm(vec()); }
};

// Light-cone flag is derived from the configuration's probe wavenumber.
BlochVector make_bloch(double kx, double ky, const SystemConfig& config);

BlochVector incidence_bloch(const ProbeGeometry& geometry, const SystemConfig& config);

// Unit in-plane direction of incidence; fixed by the plane tag at theta = 0.
Vec2 incidence_direction(Plane plane);

struct DriveField {
  std::complex<double> omega_c = 0.0;
  double delta_c = 0.0;
};

struct PathPoint {
  BlochVector k;
  double arc_length = 0.0;
};

// High-symmetry points of the square lattice: G, X, Y, M.
BlochVector symmetry_point(char label, const SystemConfig& config);

// Piecewise-linear path through the waypoints with samples_per_segment points
// per segment (both ends included). Junction points are emitted once.
// Throws OutOfZone when a waypoint lies outside the first Brillouin zone.
std::vector<PathPoint> bz_path(const std::vector<BlochVector>& waypoints,
                               int samples_per_segment,
                               const SystemConfig& config);

// "GXMG" style label strings.
std::vector<BlochVector> path_waypoints(std::string_view labels, const SystemConfig& config);

}  // namespace arraymirror
