#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "arraymirror/green.hpp"
#include "arraymirror/table.hpp"
#include "arraymirror/units.hpp"

namespace arraymirror {

// xi = -Delta_c - i Gamma_r / 2.
cplx xi(const DriveField& drive, const SystemConfig& config);

struct EitParams {
  cplx xi;
  cplx eta;
  cplx omega_c;
  double delta_c = 0.0;
};

// Throws InvalidArgument if Im xi > 0 or Im eta > 0.
EitParams make_eit_params(cplx xi, cplx eta, cplx omega_c, double delta_c = 0.0);
EitParams make_eit_params(const DriveField& drive, const ModePoint& mode, const SystemConfig& config);

// Reduced probe susceptibility 1 / (eta - dp - |Omega_c|^2 / (xi - dp)),
// in units of 1/Gamma_e. Returns 0 on the EIT dark point xi = dp.
// Throws Degenerate when the denominator vanishes.
cplx chi_reduced(double delta_p, const EitParams& params);

struct DressedPoles {
  cplx plus;   // larger real part
  cplx minus;
};

DressedPoles dressed_poles(const EitParams& params);

struct BetaPair {
  cplx beta1;  // pole Delta_plus
  cplx beta2;  // pole Delta_minus
};

// Partial-fraction split of chi_reduced over the two poles.
// Throws DegeneratePoles when |Delta_plus - Delta_minus| < 1e-10.
BetaPair beta_split(double delta_p, const EitParams& params);

// Columns delta_p, chi_re, chi_im, beta1_re, beta1_im, beta2_re, beta2_im.
SweepTable susceptibility_spectrum(const std::vector<double>& delta_p, const EitParams& params);

enum class Level { G = 0, E = 1, R = 2 };

// Density matrix of the driven collective mode. Diagonals are kept complex
// so that Hermiticity can be checked.
struct SteadyState {
  cplx gg, ee, rr;
  cplx eg, rg, re;
  double omega_p = 0.0;
  double time = 0.0;            // integration time reached
  double max_derivative = 0.0;  // largest |d rho / dt| at the end

  cplx element(Level i, Level j) const;  // rho_ij with rho_ji = conj(rho_ij)
  double trace() const { return (gg + ee + rr).real(); }
};

using SteadyStateObserver = std::function<void(const SteadyState&)>;

// Integrates the weak-probe motion equations from the ground state until
// every derivative falls below 1e-10 omega_p. Requires 0 <= omega_p <= 1e-2
// and gamma_k + gamma_r > 0. Throws NoSteadyState when the time budget
// 1e5 / min(gamma_k + gamma_r, 1) runs out. The observer sees every
// checkpoint.
SteadyState steady_state_numeric(double omega_p, const DriveField& drive, const ModePoint& mode,
                                 const SystemConfig& config, double delta_p,
                                 const SteadyStateObserver& observer = {});

}  // namespace arraymirror
