#include "arraymirror/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "arraymirror/bands.hpp"
#include "arraymirror/eit.hpp"
#include "arraymirror/green.hpp"
#include "arraymirror/scattering.hpp"
#include "arraymirror/table.hpp"

namespace arraymirror {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240611;

const char* const kNames[kCriterionCount] = {
    "Gamma-point in-plane decay",
    "Gamma-point out-of-plane subradiance",
    "grazing superradiance",
    "cooperative shifts",
    "reciprocal vs real-space decay rate",
    "steady-state susceptibility oracle",
    "beta decomposition and pole identities",
    "perfect mirror",
    "energy conservation",
    "polarization selectivity",
    "dual band and tunability",
    "EIT dark point",
    "diffraction thresholds"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Accumulates sub-checks into one criterion result.
struct Report {
  CriterionResult r;
  std::ostringstream detail;
  bool ok = true;

  Report(int id, std::string name) {
    r.id = id;
    r.name = std::move(name);
  }
  void check(bool pass, const std::string& text) {
    ok = ok && pass;
    if (detail.tellp() > 0) detail << "; ";
    detail << text << (pass ? "" : " [FAIL]");
  }
  CriterionResult done() {
    r.passed = ok;
    r.detail = detail.str();
    return r;
  }
};

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

CriterionResult criterion_1() {
  Report rep(1, kNames[0]);
  const auto c = make_config(0.1, 0.3, kDipoleX);
  const double g = gamma_k(make_bloch(0, 0, c), c).value;
  const double closed = 3.0 * kPi / (c.wavenumber() * c.wavenumber() * 0.01);
  rep.check(rel(g, closed) <= 1e-6, "gamma_k=" + num(g) + " vs closed form " + num(closed) + " (rel 1e-6)");
  rep.check(rel(g, 23.9) <= 0.005, "vs 23.9 (rel 0.5%)");
  return rep.done();
}

CriterionResult criterion_2() {
  Report rep(2, kNames[1]);
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const double g = gamma_k(make_bloch(0, 0, c), c).value;
  rep.check(g == 0.0, "gamma_k=" + num(g) + " (exact 0)");
  return rep.done();
}

CriterionResult criterion_3() {
  Report rep(3, kNames[2]);
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const double th = 0.45 * kPi;
  const double g = directional_mode(make_geometry(th, Plane::XZ), c).gamma;
  const double g0 = 3.0 * kPi / (c.wavenumber() * c.wavenumber() * 0.01);
  const double law = g0 * std::sin(th) * std::sin(th) / std::cos(th);
  rep.check(rel(g, law) <= 1e-9, "gamma_k=" + num(g) + " vs angle law " + num(law));
  rep.check(rel(g, 149.0) <= 0.01, "vs 149 (rel 1%)");
  return rep.done();
}

CriterionResult criterion_4() {
  Report rep(4, kNames[3]);
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const double th = 0.45 * kPi;
  const double z0 = delta_k(make_bloch(0, 0, cz), cz).value;
  const double x0 = delta_k(make_bloch(0, 0, cx), cx).value;
  const double xxz = directional_mode(make_geometry(th, Plane::XZ), cx).delta;
  const double xyz = directional_mode(make_geometry(th, Plane::YZ), cx).delta;
  const double znear = directional_mode(make_geometry(0.01 * kPi, Plane::XZ), cz).delta;
  const double zfar = directional_mode(make_geometry(th, Plane::XZ), cz).delta;
  rep.check(rel(z0, 31.4) <= 0.02, "z Gamma " + num(z0) + " vs 31.4 (2%)");
  rep.check(rel(x0, -8.4) <= 0.03, "x Gamma " + num(x0) + " vs -8.4 (3%)");
  rep.check(rel(xxz, -9.4) <= 0.03, "x xz 0.45pi " + num(xxz) + " vs -9.4 (3%)");
  rep.check(rel(xyz, -8.6) <= 0.03, "x yz 0.45pi " + num(xyz) + " vs -8.6 (3%)");
  rep.check(std::abs(zfar - znear - 1.2) <= 0.2, "z increase " + num(zfar - znear) + " vs 1.2 (+-0.2)");
  return rep.done();
}

CriterionResult criterion_5() {
  Report rep(5, kNames[4]);
  std::mt19937_64 rng(kSeed + 5);
  double worst = 0.0;
  int n = 0;
  for (int i = 0; i < 50; ++i) {
    const double d = uniform(rng, 0.1, 0.5);
    const auto c = make_config(d, 0.3, i % 2 == 0 ? kDipoleX : kDipoleZ);
    // In-cone points at least 0.3 k from the light cone.
    const double r = 0.7 * c.wavenumber() * std::sqrt(uniform(rng, 0.0, 1.0));
    const double phi = uniform(rng, 0.0, 2.0 * kPi);
    const auto k = make_bloch(r * std::cos(phi), r * std::sin(phi), c);
    const double exact = gamma_k(k, c).value;
    const double real = gamma_k_realspace(k, c).value;
    worst = std::max(worst, std::abs(exact - real) / std::max(exact, 1e-3));
    ++n;
  }
  rep.check(worst < 1e-3, "worst rel deviation " + num(worst) + " over " + std::to_string(n) + " points (1e-3)");
  return rep.done();
}

CriterionResult criterion_6() {
  Report rep(6, kNames[5]);
  std::mt19937_64 rng(kSeed + 6);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const auto c = make_config(0.1, 0.3, i % 2 == 0 ? kDipoleZ : kDipoleX);
    const double th = uniform(rng, kPi / 12.0, 0.45 * kPi);
    const Plane plane = uniform(rng, 0.0, 1.0) < 0.5 ? Plane::XZ : Plane::YZ;
    const DriveField drive{uniform(rng, 0.0, 60.0), uniform(rng, -15.0, 15.0)};
    const double dp = uniform(rng, -40.0, 60.0);
    const ModePoint mode = directional_mode(make_geometry(th, plane), c);
    const double op = 1e-4;
    const SteadyState ss = steady_state_numeric(op, drive, mode, c, dp);
    const cplx chi = chi_reduced(dp, make_eit_params(drive, mode, c));
    worst = std::max(worst, std::abs(ss.eg / op - chi) / std::abs(chi));
  }
  rep.check(worst < 1e-6, "worst rel deviation " + num(worst) + " over 25 draws (1e-6)");
  return rep.done();
}

CriterionResult criterion_7() {
  Report rep(7, kNames[6]);
  std::mt19937_64 rng(kSeed + 7);
  double worst_split = 0.0, worst_sum = 0.0, worst_prod = 0.0;
  const auto grid = axis_values({"delta_p", -100.0, 100.0, 1001});
  for (int i = 0; i < 10; ++i) {
    const cplx eta_v{uniform(rng, -20.0, 40.0), -0.5 * uniform(rng, 0.5, 150.0)};
    const cplx xi_v{-uniform(rng, -15.0, 15.0), -0.5 * uniform(rng, 0.0, 1.0)};
    const EitParams p = make_eit_params(xi_v, eta_v, uniform(rng, 0.0, 60.0));
    const DressedPoles poles = dressed_poles(p);
    const cplx sum = p.xi + p.eta;
    const cplx prod = p.xi * p.eta - std::norm(p.omega_c);
    worst_sum = std::max(worst_sum, std::abs(poles.plus + poles.minus - sum) / std::abs(sum));
    worst_prod = std::max(worst_prod, std::abs(poles.plus * poles.minus - prod) / std::abs(prod));
    for (double dp : grid) {
      const cplx chi = chi_reduced(dp, p);
      const BetaPair b = beta_split(dp, p);
      worst_split = std::max(worst_split, std::abs(b.beta1 + b.beta2 - chi) / std::abs(chi));
    }
  }
  rep.check(worst_split <= 1e-12, "beta1+beta2 vs chi worst rel " + num(worst_split) + " (1e-12)");
  rep.check(worst_sum <= 1e-10, "Vieta sum worst rel " + num(worst_sum) + " (1e-10)");
  rep.check(worst_prod <= 1e-10, "Vieta product worst rel " + num(worst_prod) + " (1e-10)");
  return rep.done();
}

CriterionResult criterion_8() {
  Report rep(8, kNames[7]);
  const auto c = make_config(0.1, 0.0, kDipoleX);
  const auto g = make_geometry(0.0, Plane::XZ);
  const ModePoint mode = directional_mode(g, c);
  const ScatteringResult r = scattering_matrices(mode.delta, g, DriveField{0.0, 0.0}, c, mode);
  rep.check(std::abs(r.R[0][0] - 1.0) <= 1e-8, "R_pp=" + num(r.R[0][0]) + " (1 +- 1e-8)");
  rep.check(std::abs(r.T[0][0]) <= 1e-8, "T_pp=" + num(r.T[0][0]) + " (0 +- 1e-8)");
  return rep.done();
}

CriterionResult criterion_9() {
  Report rep(9, kNames[8]);
  std::mt19937_64 rng(kSeed + 9);
  double worst = 0.0;
  double worst_lossy = 0.0;  // largest sum at the lossy resonances
  double worst_bound = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec3 pol = i % 2 == 0 ? kDipoleZ : kDipoleX;
    const auto g = make_geometry(uniform(rng, 0.0, 0.45 * kPi), uniform(rng, 0.0, 1.0) < 0.5 ? Plane::XZ : Plane::YZ,
                                 uniform(rng, 0.0, 1.0) < 0.5 ? ProbePolarization::P : ProbePolarization::S);
    const DriveField drive{uniform(rng, 0.0, 30.0), uniform(rng, -15.0, 15.0)};
    const double dp = uniform(rng, -40.0, 60.0);
    const int nu = g.polarization == ProbePolarization::P ? 0 : 1;

    const auto lossless = make_config(0.1, 0.0, pol);
    const ModePoint mode = directional_mode(g, lossless);
    worst = std::max(worst, std::abs(scattering_matrices(dp, g, drive, lossless, mode).sum_rt(nu) - 1.0));

    const auto lossy = make_config(0.1, 0.3, pol);
    const ScatteringResult probe = scattering_matrices(dp, g, drive, lossy, mode);
    worst_bound = std::max(worst_bound, probe.sum_rt(nu) - 1.0);
    // Inside the absorption band: at the dressed resonances of a coupled
    // channel with a drive present.
    if (std::abs(probe.s_plus[nu][nu]) == 0.0 && std::abs(probe.s_minus[nu][nu]) == 0.0) continue;
    const DressedPoles poles = dressed_poles(make_eit_params(drive, mode, lossy));
    for (cplx pole : {poles.plus, poles.minus}) {
      const ScatteringResult r = scattering_matrices(pole.real(), g, drive, lossy, mode);
      worst_lossy = std::max(worst_lossy, r.sum_rt(nu));
    }
  }
  rep.check(worst <= 1e-10, "lossless worst |sum-1| " + num(worst) + " (1e-10)");
  rep.check(worst_lossy < 1.0, "lossy max sum at resonances " + num(worst_lossy) + " (< 1)");
  rep.check(worst_bound <= 1e-12, "lossy sum never above 1 (max excess " + num(worst_bound) + ")");
  return rep.done();
}

CriterionResult criterion_10() {
  Report rep(10, kNames[9]);
  const auto grid = axis_values({"delta_p", -40.0, 60.0, 201});
  bool z_ok = true, xxz_ok = true, xyz_ok = true;
  for (double th : {0.0, kPi / 6.0, kPi / 4.0, 0.45 * kPi}) {
    for (Plane plane : {Plane::XZ, Plane::YZ}) {
      const auto g = make_geometry(th, plane);
      for (double oc : {0.0, 15.0}) {
        const DriveField drive{oc, 0.0};
        const auto cz = make_config(0.1, 0.3, kDipoleZ);
        const auto cx = make_config(0.1, 0.3, kDipoleX);
        const ModePoint mz = directional_mode(g, cz);
        const ModePoint mx = directional_mode(g, cx);
        for (double dp : grid) {
          const auto rz = scattering_matrices(dp, g, drive, cz, mz);
          z_ok = z_ok && rz.T[1][1] == 1.0 && rz.R[1][1] == 0.0;
          const auto rx = scattering_matrices(dp, g, drive, cx, mx);
          if (plane == Plane::XZ) {
            xxz_ok = xxz_ok && rx.T[1][1] == 1.0 && rx.R[1][1] == 0.0 && rx.R[0][1] == 0.0 && rx.T[0][1] == 0.0;
          } else {
            xyz_ok = xyz_ok && rx.T[0][0] == 1.0 && rx.R[0][0] == 0.0 && rx.R[1][0] == 0.0 && rx.T[1][0] == 0.0;
          }
        }
      }
    }
  }
  rep.check(z_ok, "z dipole: T_ss = 1, R_ss = 0");
  rep.check(xxz_ok, "x dipole, xz incidence: s fully transmitted");
  rep.check(xyz_ok, "x dipole, yz incidence: p fully transmitted");
  return rep.done();
}

std::vector<double> reflectivity_trace(const std::vector<double>& grid, const ProbeGeometry& g,
                                       const DriveField& drive, const SystemConfig& c, const ModePoint& mode) {
  std::vector<double> R;
  R.reserve(grid.size());
  for (double dp : grid) R.push_back(scattering_matrices(dp, g, drive, c, mode).R[0][0]);
  return R;
}

CriterionResult criterion_11() {
  Report rep(11, kNames[10]);
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const auto g = make_geometry(kPi / 4.0, Plane::XZ);
  const ModePoint mode = directional_mode(g, c);
  const auto grid = axis_values({"delta_p", -40.0, 60.0, 20001});

  const auto R = reflectivity_trace(grid, g, DriveField{15.0, 0.0}, c, mode);
  const auto maxima = local_maxima(R);
  const double peak = *std::max_element(R.begin(), R.end());
  rep.check(maxima.size() == 2, std::to_string(maxima.size()) + " local maxima (exactly 2)");
  rep.check(peak > 0.97, "peak R " + num(peak) + " (> 0.97)");

  // Narrow-band widths; the weak-drive narrow peak sits below R = 0.5, so
  // the band finder uses a lower floor here.
  constexpr double kFloor = 0.1;
  std::string widths;
  bool increasing = true;
  double prev = -1.0;
  for (double oc = 5.0; oc <= 30.0 + 1e-9; oc += 2.5) {
    const auto bands = extract_bands(grid, reflectivity_trace(grid, g, DriveField{oc, 0.0}, c, mode), kFloor);
    increasing = increasing && bands.first.fwhm > prev;
    prev = bands.first.fwhm;
    widths += (widths.empty() ? "" : ",") + num(bands.first.fwhm);
  }
  rep.check(increasing, "narrow FWHM vs omega_c 5..30: " + widths + " (increasing)");

  widths.clear();
  bool decreasing = true;
  prev = 1e300;
  for (double dc = -15.0; dc <= 15.0 + 1e-9; dc += 3.0) {
    const auto bands = extract_bands(grid, reflectivity_trace(grid, g, DriveField{15.0, dc}, c, mode), kFloor);
    decreasing = decreasing && bands.first.fwhm < prev;
    prev = bands.first.fwhm;
    widths += (widths.empty() ? "" : ",") + num(bands.first.fwhm);
  }
  rep.check(decreasing, "narrow FWHM vs delta_c -15..15: " + widths + " (decreasing)");
  return rep.done();
}

CriterionResult criterion_12() {
  Report rep(12, kNames[11]);
  double worst = 0.0;
  for (const Vec3& pol : {kDipoleZ, kDipoleX}) {
    const auto c = make_config(0.1, 0.0, pol);
    for (double th : {0.0, kPi / 4.0, kPi / 3.0}) {
      const auto g = make_geometry(th, Plane::XZ);
      const ModePoint mode = directional_mode(g, c);
      for (double oc : {0.5, 5.0, 15.0, 40.0}) {
        for (double dc : {-15.0, -3.0, 0.0, 7.5, 15.0}) {
          const auto r = scattering_matrices(-dc, g, DriveField{oc, dc}, c, mode);
          worst = std::max({worst, std::abs(r.T[0][0] - 1.0), std::abs(r.T[1][1] - 1.0)});
        }
      }
    }
  }
  rep.check(worst <= 1e-12, "worst |T - 1| at delta_p = -delta_c: " + num(worst) + " (1e-12)");
  return rep.done();
}

// Index where the propagating-order count first changes.
double count_step(const SweepTable& t) {
  const auto d = t.column_values("d");
  const auto n = t.column_values("propagating_orders");
  for (std::size_t i = 1; i < n.size(); ++i) {
    if (n[i] != n[i - 1]) return d[i];
  }
  return std::nan("");
}

// d where gamma_k changes most, relative to the smaller neighbour. Absolute
// steps would be dominated by the 1/d^2 growth at small d.
double gamma_feature(const SweepTable& t) {
  const auto d = t.column_values("d");
  const auto g = t.column_values("gamma_k");
  double best = -1.0, at = std::nan("");
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double jump = std::abs(g[i] - g[i - 1]) / std::min(std::abs(g[i]), std::abs(g[i - 1]));
    if (std::isfinite(jump) && jump > best) {
      best = jump;
      at = d[i];
    }
  }
  return at;
}

CriterionResult criterion_13() {
  Report rep(13, kNames[12]);
  const auto ds = default_lattice_grid();
  const double step = ds[1] - ds[0];
  const auto g = make_geometry(kPi / 6.0, Plane::YZ);
  const double dstar = diffraction_threshold(g).d_star;
  for (const Vec3& pol : {kDipoleZ, kDipoleX}) {
    const auto table = mode_vs_lattice(ds, g, make_config(0.1, 0.3, pol));
    const double at = count_step(table);
    const double feat = gamma_feature(table);
    const std::string tag = pol.z == 1.0 ? "z" : "x";
    rep.check(std::abs(at - 2.0 / 3.0) <= step + 1e-12, tag + " yz: order count step at d=" + num(at));
    rep.check(std::abs(feat - 2.0 / 3.0) <= step + 1e-12, tag + " yz: gamma_k feature at d=" + num(feat));
  }
  rep.check(std::abs(dstar - 2.0 / 3.0) <= 1e-15, "d* = " + num(dstar));

  const double th = kPi / 6.0;
  const auto at = order_contribution_xx(dstar, th);
  const auto below = order_contribution_xx(0.9 * dstar, th);
  const auto above = order_contribution_xx(1.05 * dstar, th);
  rep.check(at.value == 0.0, "x xz: (1,0) contribution at d* = " + num(std::abs(at.value)));
  rep.check(below.value.imag() == 0.0 && above.value.imag() > 0.0, "no radiative part below d*, nonzero above");

  // The x/xz decay rate stays finite and continuous through d*.
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const auto gx = make_geometry(th, Plane::XZ);
  const auto rate = [&](double d) {
    const auto c = cx.with_lattice_constant(d);
    return gamma_k(incidence_bloch(gx, c), c);
  };
  const DecayRate r0 = rate(dstar);
  const DecayRate rp = rate(dstar * (1.0 + 1e-6));
  rep.check(std::isfinite(r0.value) && !r0.flags.has(Flag::AnomalyDivergence),
            "x xz gamma_k at d* finite (" + num(r0.value) + ")");
  rep.check(std::abs(rp.value - r0.value) < 1e-2 * r0.value, "x xz gamma_k continuous across d* (inflection)");
  return rep.done();
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const std::vector<CriterionResult (*)()> table = {
      criterion_1, criterion_2, criterion_3,  criterion_4,  criterion_5,  criterion_6, criterion_7,
      criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13};
  if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(id));
  try {
    return table[static_cast<std::size_t>(id - 1)]();
  } catch (const Error& e) {
    CriterionResult r;
    r.id = id;
    r.name = kNames[id - 1];
    r.passed = false;
    r.detail = std::string("error code=") + std::string(to_string(e.code())) + " " + e.what();
    return r;
  }
}

std::vector<CriterionResult> verify_suite(const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriterionCount; ++i) {
    out.push_back(run_criterion(i));
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " (" + r.name +
         "): " + r.detail;
}

}  // namespace arraymirror
