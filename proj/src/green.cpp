#include "arraymirror/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "arraymirror/faddeeva.hpp"

namespace arraymirror {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kAnomalyTol = 1e-9;

// Fixed-order pairwise reduction so results do not depend on how rows were
// produced.
cplx pairwise_sum(const cplx* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Orders needed to cover every |p_m| below pmax.
int order_span(double kpar, double pmax, double d) {
  return static_cast<int>(std::ceil((pmax + kpar) * d / (2.0 * kPi))) + 1;
}

double richardson(double s0, double s1) { return (4.0 * s1 - s0) / 3.0; }

}  // namespace

cplx DyadicTensor::project(const Vec3& p) const {
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s += p[i] * (*this)(i, j) * p[j];
  }
  return s;
}

DyadicTensor free_green(const Vec3& r, double k) {
  const double rn = norm(r);
  if (rn == 0.0) throw Error(ErrorCode::ZeroDisplacement, "Green's tensor is singular at zero displacement");
  const double kr = k * rn;
  const cplx g = std::exp(cplx(0.0, kr)) / (4.0 * kPi * rn);
  const cplx a = 1.0 + cplx(0.0, 1.0 / kr) - 1.0 / (kr * kr);
  const cplx b = -1.0 - cplx(0.0, 3.0 / kr) + 3.0 / (kr * kr);
  const Vec3 u = (1.0 / rn) * r;
  DyadicTensor out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = g * ((i == j ? a : cplx(0.0)) + b * u[i] * u[j]);
  }
  return out;
}

std::vector<OrderTerm> reciprocal_orders(const BlochVector& k, const SystemConfig& config, int max_order) {
  if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "max_order must be non-negative");
  const double kw = config.wavenumber();
  const double g = 2.0 * kPi / config.lattice_constant();
  const Vec3& pol = config.dipole();
  std::vector<OrderTerm> out;
  for (int mx = -max_order; mx <= max_order; ++mx) {
    for (int my = -max_order; my <= max_order; ++my) {
      OrderTerm t;
      t.mx = mx;
      t.my = my;
      t.p = {k.kx - g * mx, k.ky - g * my};
      const double pn = norm(t.p);
      const double kap2 = (kw - pn) * (kw + pn);
      t.propagating = pn < kw;
      t.kappa = kap2 >= 0.0 ? cplx(std::sqrt(kap2), 0.0) : cplx(0.0, std::sqrt(-kap2));
      if (std::abs(kap2) < kAnomalyTol * kw * kw) t.flags.set(Flag::AnomalyProximity);
      if (t.propagating) {
        const double par2 = pol.x * pol.x + pol.y * pol.y;
        const double c = cross2({pol.x, pol.y}, t.p);
        t.f = std::clamp((par2 * kap2 + c * c + pol.z * pol.z * pn * pn) / (kw * kw), 0.0, 1.0);
      }
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const OrderTerm& a, const OrderTerm& b) {
    const int na = a.mx * a.mx + a.my * a.my;
    const int nb = b.mx * b.mx + b.my * b.my;
    if (na != nb) return na < nb;
    if (a.mx != b.mx) return a.mx < b.mx;
    return a.my < b.my;
  });
  return out;
}

double order_weight(const OrderTerm& term, const Vec3& dipole, double k, Flags& flags) {
  // f / kappa = |p_par|^2 kappa / k^2 + [(p_par x p)^2 + p_z^2 |p|^2] / (k^2 kappa)
  const double kap = term.kappa.real();
  const double par2 = dipole.x * dipole.x + dipole.y * dipole.y;
  const double c = cross2({dipole.x, dipole.y}, term.p);
  const double pn = norm(term.p);
  const double n2 = c * c + dipole.z * dipole.z * pn * pn;
  if (kap < kAnomalyTol * k) {
    if (n2 / (k * k) < kAnomalyTol) {
      flags.set(Flag::AnomalyProximity);
      return par2 * kap / (k * k);
    }
    flags.set(Flag::AnomalyDivergence);
    return std::numeric_limits<double>::infinity();
  }
  return par2 * kap / (k * k) + n2 / (k * k * kap);
}

DecayRate gamma_k(const BlochVector& k, const SystemConfig& config) {
  const double kw = config.wavenumber();
  const double d = config.lattice_constant();
  const int span = std::max(3, order_span(k.magnitude(), kw, d));
  DecayRate out;
  double sum = 0.0;
  for (const auto& t : reciprocal_orders(k, config, span)) {
    if (t.flags.has(Flag::AnomalyProximity)) out.flags.set(Flag::AnomalyProximity);
    if (!t.propagating) {
      // Exactly on the light cone: take the grazing limit of the weight.
      if (t.kappa == 0.0) sum += order_weight(t, config.dipole(), kw, out.flags);
      continue;
    }
    ++out.propagating_orders;
    sum += order_weight(t, config.dipole(), kw, out.flags);
  }
  out.value = 3.0 * kPi * config.gamma_e() / (kw * d * d) * sum;
  return out;
}

double light_cone_gap(const BlochVector& k, const SystemConfig& config) {
  const double kw = config.wavenumber();
  const double d = config.lattice_constant();
  const int span = std::max(2, order_span(k.magnitude(), kw, d));
  const double g = 2.0 * kPi / d;
  double gap = std::numeric_limits<double>::infinity();
  for (int mx = -span; mx <= span; ++mx) {
    for (int my = -span; my <= span; ++my) {
      const double pn = std::hypot(k.kx - g * mx, k.ky - g * my);
      gap = std::min(gap, std::abs(pn - kw));
    }
  }
  return gap;
}

cplx lattice_sum_ewald(const BlochVector& k, const SystemConfig& config, double scale, Flags& flags) {
  const double kw = config.wavenumber();
  const double k2 = kw * kw;
  const double d = config.lattice_constant();
  const Vec3& pol = config.dipole();
  const double E = scale * kSqrtPi / d;
  const double area = d * d;
  const double par2 = pol.x * pol.x + pol.y * pol.y;

  // Spectral part: screened field of every sheet of reciprocal order m.
  const double pmax = std::sqrt(13.0 * E * 13.0 * E + k2);
  const int span = order_span(k.magnitude(), pmax, d);
  const double g = 2.0 * kPi / d;
  cplx spectral = 0.0;
  for (int mx = -span; mx <= span; ++mx) {
    for (int my = -span; my <= span; ++my) {
      const Vec2 p{k.kx - g * mx, k.ky - g * my};
      const double pn = norm(p);
      if (pn > pmax) continue;
      const double kap2 = (kw - pn) * (kw + pn);
      const double c = cross2({pol.x, pol.y}, p);
      const double n2 = c * c + pol.z * pol.z * pn * pn;
      cplx kap = kap2 >= 0.0 ? cplx(std::sqrt(kap2), 0.0) : cplx(0.0, std::sqrt(-kap2));
      if (std::abs(kap) < kAnomalyTol * kw) {
        flags.set(n2 / k2 < kAnomalyTol ? Flag::AnomalyProximity : Flag::AnomalyDivergence);
        kap = kAnomalyTol * kw;  // radiating-side limit
      }
      const cplx a = cplx(0.0, -1.0) * kap / (2.0 * E);
      const cplx erfc_a = cerfc(a);
      spectral += cplx(0.0, 1.0) * erfc_a / (2.0 * area * k2) * (par2 * kap + n2 / kap) -
                  pol.z * pol.z * E * std::exp(-a * a) / (area * kSqrtPi * k2);
    }
  }

  // Real-space part: the screened remainder decays like a Gaussian, so a few
  // shells suffice. Terms are even in r, so pair r and -r.
  const double b = kw / (2.0 * E);
  const double rmax = std::sqrt(40.0 + b * b) / E;
  const int nmax = static_cast<int>(std::ceil(rmax / d));
  const double edge = std::exp(b * b);
  double real_space = 0.0;
  for (int nx = 0; nx <= nmax; ++nx) {
    for (int ny = -nmax; ny <= nmax; ++ny) {
      if (nx == 0 && ny <= 0) continue;
      const double x = nx * d;
      const double y = ny * d;
      const double r = std::hypot(x, y);
      if (r > rmax) continue;
      const double rE = r * E;
      const cplx X = std::exp(b * b - rE * rE) * faddeeva_upper(cplx(-b, rE));
      const double gauss = std::exp(-rE * rE) * edge;
      const double u = 2.0 * X.real();
      const double u1 = -2.0 * kw * X.imag() - 4.0 * E / kSqrtPi * gauss;
      const double u2 = -k2 * u + 8.0 * E * E * E * r / kSqrtPi * gauss;
      const double w0 = u / (8.0 * kPi * r);
      const double w1 = (u1 / r - u / (r * r)) / (8.0 * kPi);
      const double w2 = (u2 / r - 2.0 * u1 / (r * r) + 2.0 * u / (r * r * r)) / (8.0 * kPi);
      const double c = (pol.x * x + pol.y * y) / r;
      const double val = w0 + (w2 * c * c + (w1 / r) * (1.0 - c * c)) / k2;
      real_space += 2.0 * val * std::cos(k.kx * x + k.ky * y);
    }
  }

  // Remove the n = 0 site that the spectral part includes.
  const cplx ec = cerfc(cplx(0.0, kw / (2.0 * E)));
  const double pi52 = std::pow(kPi, 2.5);
  const double pi32 = std::pow(kPi, 1.5);
  const cplx c0 = (-2.0 * kPi * E * edge + cplx(0.0, 1.0) * pi32 * kw * (ec - 2.0)) / (4.0 * pi52);
  const cplx c2 = (2.0 * kPi * E * (2.0 * E * E + k2) * edge +
                   cplx(0.0, 1.0) * pi32 * k2 * kw * (2.0 - ec)) /
                  (24.0 * pi52);
  return spectral + real_space + c0 + 2.0 * c2 / k2;
}

std::array<cplx, 3> lattice_sum_damped(const BlochVector& k, const SystemConfig& config, double R0) {
  if (!(R0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "damping radius must be positive");
  const double kw = config.wavenumber();
  const double d = config.lattice_constant();
  const Vec3& pol = config.dipole();
  const double rmax = 6.0 * 4.0 * R0;
  const int n = static_cast<int>(std::floor(rmax / d));
  const double inv = 1.0 / (16.0 * R0 * R0);

  std::vector<std::array<cplx, 3>> rows(static_cast<std::size_t>(n) + 1);
  for (int nx = 0; nx <= n; ++nx) {
    std::array<cplx, 3> acc{};
    const double x = nx * d;
    for (int ny = -n; ny <= n; ++ny) {
      if (nx == 0 && ny <= 0) continue;
      const double y = ny * d;
      const double r2 = x * x + y * y;
      if (r2 > rmax * rmax) continue;
      const double r = std::sqrt(r2);
      const double kr = kw * r;
      const double c = (pol.x * x + pol.y * y) / r;
      const cplx g = std::exp(cplx(0.0, kr)) / (4.0 * kPi * r);
      const cplx a = 1.0 + cplx(0.0, 1.0 / kr) - 1.0 / (kr * kr);
      const cplx bb = -1.0 - cplx(0.0, 3.0 / kr) + 3.0 / (kr * kr);
      const cplx val = g * (a + bb * c * c) * (2.0 * std::cos(k.kx * x + k.ky * y));
      const double w4 = std::exp(-r2 * inv);
      const double w2 = (w4 * w4) * (w4 * w4);
      const double w1 = (w2 * w2) * (w2 * w2);
      acc[0] += val * w1;
      acc[1] += val * w2;
      acc[2] += val * w4;
    }
    rows[static_cast<std::size_t>(nx)] = acc;
  }
  std::array<cplx, 3> out{};
  std::vector<cplx> col(rows.size());
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][j];
    out[j] = pairwise_sum(col.data(), col.size());
  }
  return out;
}

namespace {

// R0 large enough that the Gaussian smoothing of the 1/kappa edge stays
// away from the nearest light-cone crossing.
double adapted_radius(const BlochVector& k, const SystemConfig& config, double base, double cap) {
  const double gap = light_cone_gap(k, config);
  const double need = std::max(base, 10.0 / gap);
  if (!(need <= cap)) {
    throw Error(ErrorCode::NoConvergence,
                "Bloch vector too close to a light-cone crossing for the damped real-space sum (gap " +
                    std::to_string(gap) + ")");
  }
  return need;
}

}  // namespace

ShiftResult delta_k(const BlochVector& k, const SystemConfig& config, const AccelParams& accel) {
  const double kw = config.wavenumber();
  const double scale = -3.0 * kPi * config.gamma_e() / kw;
  ShiftResult out;
  if (accel.method == SumMethod::Ewald) {
    const cplx s1 = lattice_sum_ewald(k, config, 1.0, out.flags);
    const cplx s2 = lattice_sum_ewald(k, config, 1.3, out.flags);
    out.value = scale * s1.real();
    out.error = std::abs(scale * (s1.real() - s2.real()));
  } else {
    const double R0 = adapted_radius(k, config, accel.base_radius, accel.max_radius);
    const auto s = lattice_sum_damped(k, config, R0);
    const double e1 = richardson(scale * s[0].real(), scale * s[1].real());
    const double e2 = richardson(scale * s[1].real(), scale * s[2].real());
    out.value = e2;
    out.error = std::abs(e2 - e1);
  }
  if (!(out.error <= accel.tolerance * std::max(std::abs(out.value), 1.0))) {
    throw Error(ErrorCode::NoConvergence, "cooperative shift error estimate " + std::to_string(out.error) +
                                              " exceeds tolerance");
  }
  return out;
}

RealSpaceRate gamma_k_realspace(const BlochVector& k, const SystemConfig& config, double cutoff,
                                double tolerance) {
  if (!(cutoff >= 20.0)) throw Error(ErrorCode::InvalidArgument, "real-space cutoff must be at least 20 lambda");
  const double kw = config.wavenumber();
  const double R0 = adapted_radius(k, config, cutoff / 4.0, std::max(25.0, cutoff / 4.0));
  const auto s = lattice_sum_damped(k, config, R0);
  auto rate = [&](cplx v) { return config.gamma_e() * (1.0 + 6.0 * kPi / kw * v.imag()); };
  const double e1 = richardson(rate(s[0]), rate(s[1]));
  const double e2 = richardson(rate(s[1]), rate(s[2]));
  RealSpaceRate out{e2, std::abs(e2 - e1), R0};
  if (!(out.error <= tolerance * std::max(std::abs(e2), 1.0))) {
    throw Error(ErrorCode::NoConvergence, "real-space decay rate did not converge");
  }
  return out;
}

ModePoint eta(const BlochVector& k, const SystemConfig& config, const AccelParams& accel) {
  ModePoint mp;
  mp.k = k;
  const DecayRate g = gamma_k(k, config);
  const ShiftResult s = delta_k(k, config, accel);
  mp.delta = s.value;
  mp.gamma = g.value;
  mp.shift_error = s.error;
  mp.propagating_orders = g.propagating_orders;
  mp.flags = g.flags | s.flags;
  mp.eta = cplx(mp.delta, -0.5 * mp.gamma);
  return mp;
}

}  // namespace arraymirror
