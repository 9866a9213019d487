#pragma once

#include <array>
#include <utility>
#include <vector>

#include "arraymirror/eit.hpp"
#include "arraymirror/green.hpp"
#include "arraymirror/table.hpp"
#include "arraymirror/units.hpp"

namespace arraymirror {

struct PolarizationBasis {
  Vec3 p_plus, p_minus;  // transmitted / reflected side
  Vec3 s_plus, s_minus;
};

// s/p basis for real wavevectors; at theta = 0 the plane tag fixes the
// in-plane direction.
PolarizationBasis sp_basis(const ProbeGeometry& geometry, const SystemConfig& config);

// Index 0 is p, index 1 is s.
using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Real2 = std::array<std::array<double, 2>, 2>;

struct ScatteringResult {
  Mat2 s_plus{};
  Mat2 s_minus{};
  Real2 R{};
  Real2 T{};
  double delta_p = 0.0;
  ProbeGeometry geometry;
  DriveField drive;
  Flags flags;

  // Power leaving the specular channels for input polarization nu (0 = p).
  double sum_rt(int nu) const { return R[0][nu] + R[1][nu] + T[0][nu] + T[1][nu]; }
};

// Prefactor A = i (3 pi / 2) Gamma_e / (d^2 k k_z).
cplx scattering_prefactor(const ProbeGeometry& geometry, const SystemConfig& config);

ScatteringResult scattering_matrices(double delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                                     const SystemConfig& config, const ModePoint& mode);
ScatteringResult scattering_matrices(double delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                                     const SystemConfig& config, const AccelParams& accel = {});

// Columns delta_p, R_pp, R_ps, R_sp, R_ss, T_pp, T_ps, T_sp, T_ss, sum_RT,
// nonspecular_loss. sum_RT is for the geometry's probe polarization and
// nonspecular_loss = 1 - sum_RT.
SweepTable rt_spectrum(const std::vector<double>& delta_p, const ProbeGeometry& geometry, const DriveField& drive,
                       const SystemConfig& config, const AccelParams& accel = {});

enum class BandKind { Narrow, Broad };

struct BandDescriptor {
  double center = 0.0;
  double peak = 0.0;
  double fwhm = 0.0;
  BandKind kind = BandKind::Narrow;
};

// Indices of local maxima of y. A flat top counts once, at its first point.
std::vector<std::size_t> local_maxima(const std::vector<double>& y);

// Full width at half of y[peak], interpolated linearly, searched outward.
double fwhm_at(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak);

// The two highest local maxima above min_peak as (narrow, broad).
// Throws NotDualBand if fewer than two qualify.
std::pair<BandDescriptor, BandDescriptor> extract_bands(const std::vector<double>& delta_p,
                                                        const std::vector<double>& reflectivity,
                                                        double min_peak = 0.5);

struct DiffractionThreshold {
  double d_star = 1.0;
  int mx = 0;
  int my = 0;
};

// d* = lambda / (1 + sin theta) and the order that opens there.
DiffractionThreshold diffraction_threshold(const ProbeGeometry& geometry);

struct OrderContribution {
  cplx value;
  Flags flags;
};

// Reciprocal xx term of order (1,0) for XZ incidence: i kappa / (2 d^2 k^2).
// Zero with AnomalyProximity on the kappa = 0 line.
OrderContribution order_contribution_xx(double d, double theta);

enum class SweepParam { OmegaC, DeltaC, Theta, LatticeConstant };

SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam p);

struct SweepAxis {
  SweepParam param;
  std::vector<double> values;
};

// Outer axes (0 to 2, slowest first) times the delta_p grid. Columns are the
// outer parameter names followed by the rt_spectrum columns.
SweepTable spectra_sweep(const std::vector<SweepAxis>& axes, const std::vector<double>& delta_p,
                         const ProbeGeometry& geometry, const DriveField& drive, const SystemConfig& config,
                         const AccelParams& accel = {});

}  // namespace arraymirror
