#include "arraymirror/eit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace arraymirror {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const cplx kI{0.0, 1.0};

// eg, rg, re, ee, rr; gg follows from the trace. Keeping the small
// populations as state avoids the cancellation in 1 - gg - ee.
using State = std::array<cplx, 5>;

struct MotionEquations {
  cplx eta;
  cplx xi;
  cplx omega_c;
  cplx omega_p;
  double delta_p;
  double gamma_k;
  double gamma_r;

  void operator()(const State& s, State& ds, double /*t*/) const {
    const cplx eg = s[0], rg = s[1], re = s[2], ee = s[3], rr = s[4];
    const cplx gg = 1.0 - ee - rr;
    const cplx oc = omega_c, op = omega_p;
    ds[0] = -kI * (op * (ee - gg) + (eta - delta_p) * eg - std::conj(oc) * rg);
    ds[1] = -kI * (-oc * eg + op * re + (xi - delta_p) * rg);
    ds[2] = -kI * (oc * (rr - ee) + (xi - std::conj(eta)) * re + std::conj(op) * rg);
    ds[3] = -kI * (-op * std::conj(eg) + std::conj(op) * eg + oc * std::conj(re) - std::conj(oc) * re) +
            gamma_r * rr - gamma_k * ee;
    ds[4] = kI * (oc * std::conj(re) - std::conj(oc) * re) - gamma_r * rr;
  }
};

double max_abs(const State& s) {
  double m = 0.0;
  for (const auto& v : s) m = std::max(m, std::abs(v));
  return m;
}

SteadyState snapshot(const State& s, double omega_p, double t, double deriv) {
  SteadyState out;
  out.eg = s[0];
  out.rg = s[1];
  out.re = s[2];
  out.ee = s[3];
  out.rr = s[4];
  out.gg = 1.0 - s[3] - s[4];
  out.omega_p = omega_p;
  out.time = t;
  out.max_derivative = deriv;
  return out;
}

}  // namespace

cplx xi(const DriveField& drive, const SystemConfig& config) {
  return {-drive.delta_c, -0.5 * config.gamma_r()};
}

EitParams make_eit_params(cplx xi_value, cplx eta_value, cplx omega_c, double delta_c) {
  if (xi_value.imag() > 0.0) throw Error(ErrorCode::InvalidArgument, "Im xi must be non-positive");
  if (eta_value.imag() > 0.0) throw Error(ErrorCode::InvalidArgument, "Im eta must be non-positive");
  if (!std::isfinite(std::abs(omega_c))) throw Error(ErrorCode::InvalidArgument, "Omega_c must be finite");
  return {xi_value, eta_value, omega_c, delta_c};
}

EitParams make_eit_params(const DriveField& drive, const ModePoint& mode, const SystemConfig& config) {
  return make_eit_params(xi(drive, config), mode.eta, drive.omega_c, drive.delta_c);
}

cplx chi_reduced(double delta_p, const EitParams& p) {
  const double oc2 = std::norm(p.omega_c);
  const cplx inner = p.xi - delta_p;
  if (oc2 > 0.0 && inner == 0.0) return 0.0;
  const cplx den = p.eta - delta_p - (oc2 > 0.0 ? oc2 / inner : cplx(0.0));
  if (std::abs(den) < 1e-14) {
    throw Error(ErrorCode::Degenerate, "probe detuning sits on an undamped pole of the susceptibility");
  }
  return 1.0 / den;
}

DressedPoles dressed_poles(const EitParams& p) {
  const cplx root = std::sqrt((p.xi - p.eta) * (p.xi - p.eta) + 4.0 * std::norm(p.omega_c));
  cplx a = 0.5 * (p.xi + p.eta + root);
  cplx b = 0.5 * (p.xi + p.eta - root);
  if (b.real() > a.real() || (b.real() == a.real() && b.imag() > a.imag())) std::swap(a, b);
  return {a, b};
}

BetaPair beta_split(double delta_p, const EitParams& p) {
  const DressedPoles poles = dressed_poles(p);
  const cplx gap = poles.plus - poles.minus;
  if (std::abs(gap) < 1e-10) throw Error(ErrorCode::DegeneratePoles, "dressed poles coincide");
  return {(p.xi - poles.plus) / gap / (delta_p - poles.plus),
          (poles.minus - p.xi) / gap / (delta_p - poles.minus)};
}

SweepTable susceptibility_spectrum(const std::vector<double>& delta_p, const EitParams& params) {
  SweepTable t;
  t.columns = {"delta_p", "chi_re", "chi_im", "beta1_re", "beta1_im", "beta2_re", "beta2_im"};
  for (double dp : delta_p) {
    Flags f;
    cplx chi{kNaN, kNaN};
    BetaPair b{{kNaN, kNaN}, {kNaN, kNaN}};
    try {
      chi = chi_reduced(dp, params);
    } catch (const Error& e) {
      f.set(flag_for(e.code()));
    }
    try {
      b = beta_split(dp, params);
    } catch (const Error& e) {
      f.set(flag_for(e.code()));
    }
    t.add_row({dp, chi.real(), chi.imag(), b.beta1.real(), b.beta1.imag(), b.beta2.real(), b.beta2.imag()}, f);
  }
  t.meta["xi"] = {params.xi.real(), params.xi.imag()};
  t.meta["eta"] = {params.eta.real(), params.eta.imag()};
  t.meta["omega_c"] = {params.omega_c.real(), params.omega_c.imag()};
  t.meta["delta_c"] = params.delta_c;
  return t;
}

cplx SteadyState::element(Level i, Level j) const {
  auto idx = [](Level l) { return static_cast<int>(l); };
  const int a = idx(i), b = idx(j);
  if (a == b) return a == 0 ? gg : (a == 1 ? ee : rr);
  // Stored: eg, rg, re (first index above the second in the ladder).
  auto stored = [&](int hi, int lo) {
    if (hi == 1 && lo == 0) return eg;
    if (hi == 2 && lo == 0) return rg;
    return re;  // hi == 2, lo == 1
  };
  return a > b ? stored(a, b) : std::conj(stored(b, a));
}

SteadyState steady_state_numeric(double omega_p, const DriveField& drive, const ModePoint& mode,
                                 const SystemConfig& config, double delta_p, const SteadyStateObserver& observer) {
  if (!(omega_p >= 0.0 && omega_p <= 1e-2)) {
    throw Error(ErrorCode::OutOfRange, "steady-state probe amplitude must lie in [0, 1e-2]");
  }
  const double damping = mode.gamma + config.gamma_r();
  if (!(damping > 0.0) || !std::isfinite(damping)) {
    throw Error(ErrorCode::InvalidArgument, "steady state needs gamma_k + gamma_r > 0 and finite");
  }
  const MotionEquations sys{mode.eta, xi(drive, config), drive.omega_c, omega_p, delta_p, mode.gamma,
                            config.gamma_r()};

  State s{};
  State ds{};
  const double threshold = 1e-10 * omega_p;
  const double budget = 1e5 / std::min(damping, 1.0);

  namespace odeint = boost::numeric::odeint;
  // Near equilibrium an unconstrained controller grows the step up to the
  // stability edge, where the map barely contracts and the residual stalls at
  // the tolerance level. Capping the step well inside the stable region keeps
  // the approach to the fixed point geometric.
  const double radius = std::abs(mode.eta - delta_p) + std::abs(sys.xi - delta_p) + 2.0 * std::abs(drive.omega_c) +
                        mode.gamma + config.gamma_r() + 2.0 * omega_p + 1.0;
  const double max_dt = 0.5 / radius;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14 * std::max(omega_p, 1e-30), 1e-12,
                                                                           max_dt);

  double t = 0.0;
  double dt = 0.1 * max_dt;
  const double chunk = 1.0;
  for (;;) {
    sys(s, ds, t);
    const double deriv = max_abs(ds);
    const SteadyState snap = snapshot(s, omega_p, t, deriv);
    if (observer) observer(snap);
    if (deriv <= threshold) return snap;
    if (t >= budget) {
      throw Error(ErrorCode::NoSteadyState, "no steady state within t = " + std::to_string(budget) +
                                                " (max derivative " + std::to_string(deriv) + ")");
    }
    odeint::integrate_adaptive(stepper, sys, s, t, t + chunk, dt);
    t += chunk;
  }
}

}  // namespace arraymirror
