#pragma once

#include <array>
#include <complex>
#include <vector>

#include "arraymirror/error.hpp"
#include "arraymirror/units.hpp"

namespace arraymirror {

using cplx = std::complex<double>;

// 3x3 complex tensor in units of inverse length.
struct DyadicTensor {
  std::array<std::array<cplx, 3>, 3> m{};

  cplx& operator()(int i, int j) { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  cplx operator()(int i, int j) const { return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  // p . G . p for a real orientation p.
  cplx project(const Vec3& p) const;
};

// Free-space dyadic Green's tensor. Throws ZeroDisplacement for r = 0.
DyadicTensor free_green(const Vec3& r, double k);

struct OrderTerm {
  int mx = 0;
  int my = 0;
  Vec2 p;            // k_par - q_m
  cplx kappa;        // sqrt(k^2 - |p|^2), positive imaginary when evanescent
  bool propagating = false;
  double f = 0.0;    // polarization factor, 0 <= f <= 1
  Flags flags;       // AnomalyProximity near kappa = 0
};

// All orders with |mx|, |my| <= max_order, sorted by mx^2+my^2 then (mx, my).
std::vector<OrderTerm> reciprocal_orders(const BlochVector& k, const SystemConfig& config, int max_order = 3);

// f_m / kappa_m for one propagating order, written so that kappa -> 0 stays
// finite when the order carries no weight there. Sets AnomalyDivergence and
// returns +inf when it does.
double order_weight(const OrderTerm& term, const Vec3& dipole, double k, Flags& flags);

struct DecayRate {
  double value = 0.0;  // Gamma_e units, +inf sentinel on divergence
  int propagating_orders = 0;
  Flags flags;
};

// Exact collective decay rate from the propagating diffraction orders.
DecayRate gamma_k(const BlochVector& k, const SystemConfig& config);

enum class SumMethod { Ewald, GaussianRichardson };

struct AccelParams {
  SumMethod method = SumMethod::Ewald;
  // Gaussian damping radius R0 (units of lambda). Radii R0, 2R0, 4R0 are used.
  double base_radius = 5.0;
  // The damped sums adapt R0 near a light-cone crossing up to this value.
  double max_radius = 25.0;
  // Accepted error relative to max(|shift|, 1).
  double tolerance = 1e-3;
};

struct ShiftResult {
  double value = 0.0;
  double error = 0.0;
  Flags flags;
};

// Cooperative shift Delta_k. Throws NoConvergence when the error estimate
// exceeds the tolerance.
ShiftResult delta_k(const BlochVector& k, const SystemConfig& config, const AccelParams& accel = {});

// Lattice sum S = sum_{n != 0} p.G(r_n).p exp(-i k.r_n), Ewald split with
// splitting parameter scale * sqrt(pi) / d. Sets AnomalyDivergence in flags
// when an order sits on the light cone with nonzero weight.
cplx lattice_sum_ewald(const BlochVector& k, const SystemConfig& config, double scale, Flags& flags);

// The same sum with a Gaussian factor exp(-(r/Rc)^2) at Rc = R0, 2R0, 4R0.
// Sites out to 6 Rc are included, where the weight is below 1e-15.
std::array<cplx, 3> lattice_sum_damped(const BlochVector& k, const SystemConfig& config, double R0);

struct RealSpaceRate {
  double value = 0.0;
  double error = 0.0;
  double base_radius = 0.0;  // R0 actually used
};

// Decay rate from the real-space sum (verification only). cutoff is the
// largest damping radius 4 R0; must be >= 20. Throws NoConvergence.
RealSpaceRate gamma_k_realspace(const BlochVector& k, const SystemConfig& config, double cutoff = 20.0,
                                double tolerance = 1e-3);

// Distance of the nearest diffraction order from the light cone,
// min_m | |p_m| - k |.
double light_cone_gap(const BlochVector& k, const SystemConfig& config);

struct ModePoint {
  BlochVector k;
  double delta = 0.0;
  double gamma = 0.0;
  cplx eta;  // delta - i gamma / 2
  double shift_error = 0.0;
  int propagating_orders = 0;
  Flags flags;
};

ModePoint eta(const BlochVector& k, const SystemConfig& config, const AccelParams& accel = {});

}  // namespace arraymirror
