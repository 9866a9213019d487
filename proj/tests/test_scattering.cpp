#include <cmath>
#include <numbers>

#include "arraymirror/bands.hpp"
#include "arraymirror/scattering.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arraymirror;

namespace {

constexpr double kPi = std::numbers::pi;

// Two Lorentzian reflection lines, widths 1 (at 0) and 6 (at 20).
std::pair<std::vector<double>, std::vector<double>> two_lines() {
  std::vector<double> x, y;
  for (int i = 0; i <= 8000; ++i) {
    const double v = -20.0 + 0.01 * i;
    x.push_back(v);
    y.push_back(0.9 / (1.0 + 4.0 * v * v) + 0.8 / (1.0 + 4.0 * (v - 20.0) * (v - 20.0) / 36.0));
  }
  return {x, y};
}

}  // namespace

TEST_SUITE("scattering") {

TEST_CASE("s/p basis is orthonormal and transverse") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  for (Plane plane : {Plane::XZ, Plane::YZ}) {
    const auto g = make_geometry(0.6, plane);
    const auto b = sp_basis(g, c);
    const Vec2 u = incidence_direction(plane);
    const Vec3 kt{std::sin(0.6) * u.x, std::sin(0.6) * u.y, std::cos(0.6)};
    const Vec3 kr{kt.x, kt.y, -kt.z};
    CHECK(norm(b.p_plus) == doctest::Approx(1.0));
    CHECK(norm(b.s_plus) == doctest::Approx(1.0));
    CHECK(dot(b.p_plus, b.s_plus) == doctest::Approx(0.0));
    CHECK(dot(b.p_plus, kt) == doctest::Approx(0.0));
    CHECK(dot(b.p_minus, kr) == doctest::Approx(0.0));
    CHECK(dot(b.s_plus, kt) == doctest::Approx(0.0));
  }
}

TEST_CASE("prefactor") {
  const auto c = make_config(0.2, 0.3, kDipoleZ);
  const auto a = scattering_prefactor(make_geometry(0.0, Plane::XZ), c);
  CHECK(a.real() == 0.0);
  CHECK(a.imag() == doctest::Approx(1.5 * kPi / (0.04 * kProbeWavenumber * kProbeWavenumber)));
}

TEST_CASE("perfect mirror at the collective resonance") {
  const auto c = make_config(0.1, 0.3, kDipoleX);
  const auto g = make_geometry(0.0, Plane::XZ);
  const auto m = directional_mode(g, c);
  const auto r = scattering_matrices(m.delta, g, DriveField{}, c, m);
  CHECK(r.R[0][0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.T[0][0] < 1e-20);
}

TEST_CASE("lossless array conserves energy") {
  const auto c = make_config(0.3, 0.0, kDipoleX);
  const auto g = make_geometry(0.4, Plane::XZ);
  const auto m = directional_mode(g, c);
  REQUIRE(m.propagating_orders == 1);
  for (double dp = -20.0; dp <= 20.0; dp += 0.9) {
    const auto r = scattering_matrices(dp, g, DriveField{7.0, 2.0}, c, m);
    CHECK(r.sum_rt(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.sum_rt(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("lossy array never gains energy") {
  const auto c = make_config(0.3, 0.5, kDipoleZ);
  const auto g = make_geometry(0.4, Plane::YZ);
  const auto t = rt_spectrum(axis_values({"delta_p", -20, 20, 201}), g, DriveField{7.0, 2.0}, c);
  for (double s : t.column_values("sum_RT")) CHECK(s <= 1.0 + 1e-12);
  const auto loss = t.column_values("nonspecular_loss");
  const auto sum = t.column_values("sum_RT");
  for (std::size_t i = 0; i < sum.size(); ++i) CHECK(loss[i] == doctest::Approx(1.0 - sum[i]));
}

TEST_CASE("polarization selectivity") {
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto r = scattering_matrices(5.0, make_geometry(0.5, Plane::XZ), DriveField{}, cz);
  CHECK(r.T[1][1] == doctest::Approx(1.0));
  CHECK(r.R[1][1] == 0.0);
  CHECK(r.R[0][1] == 0.0);
}

TEST_CASE("scattering refuses a divergent mode") {
  const auto cz = make_config(0.6, 0.3, kDipoleZ);
  // sin(theta) = 1/d - 1 puts the (-1,0) order on the light cone.
  const double th = std::asin(1.0 / 0.6 - 1.0);
  CHECK(code_of([&] { scattering_matrices(0.0, make_geometry(th, Plane::XZ), DriveField{}, cz); }) ==
        ErrorCode::AnomalyDivergence);
}

TEST_CASE("local maxima and widths") {
  const std::vector<double> y{0, 1, 0, 2, 2, 0, 3, 1};
  const auto m = local_maxima(y);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 1);
  CHECK(m[1] == 3);
  CHECK(m[2] == 6);
  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> tri{0, 0.5, 1, 0.5, 0};
  CHECK(fwhm_at(x, tri, 2) == doctest::Approx(2.0));
}

TEST_CASE("band extraction") {
  const auto [x, y] = two_lines();
  const auto [narrow, broad] = extract_bands(x, y);
  CHECK(narrow.kind == BandKind::Narrow);
  CHECK(broad.kind == BandKind::Broad);
  CHECK(narrow.center == doctest::Approx(0.0).epsilon(0.02));
  CHECK(broad.center == doctest::Approx(20.0).epsilon(0.01));
  CHECK(narrow.fwhm == doctest::Approx(1.0).epsilon(0.05));
  CHECK(broad.fwhm == doctest::Approx(6.0).epsilon(0.05));
  std::vector<double> single(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) single[i] = 0.9 / (1.0 + 4.0 * x[i] * x[i]);
  CHECK(code_of([&] { extract_bands(x, single); }) == ErrorCode::NotDualBand);
}

TEST_CASE("diffraction threshold") {
  const auto xz = diffraction_threshold(make_geometry(kPi / 6, Plane::XZ));
  CHECK(xz.d_star == doctest::Approx(2.0 / 3.0));
  CHECK(xz.mx == 1);
  CHECK(xz.my == 0);
  const auto yz = diffraction_threshold(make_geometry(kPi / 6, Plane::YZ));
  CHECK(yz.mx == 0);
  CHECK(yz.my == 1);
  CHECK(diffraction_threshold(make_geometry(0.0, Plane::XZ)).d_star == 1.0);
}

TEST_CASE("order contribution across the threshold") {
  const double th = kPi / 6;
  const double k = kProbeWavenumber;
  const double d_prop = 0.8, d_ev = 0.5;
  const double up = 1.0 / d_prop - 0.5, ue = 1.0 / d_ev - 0.5;
  const auto prop = order_contribution_xx(d_prop, th);
  const auto ev = order_contribution_xx(d_ev, th);
  CHECK(prop.value.real() == 0.0);
  CHECK(prop.value.imag() == doctest::Approx(std::sqrt(1 - up * up) / (2 * d_prop * d_prop * k)));
  CHECK(ev.value.imag() == 0.0);
  CHECK(ev.value.real() == doctest::Approx(-std::sqrt(ue * ue - 1) / (2 * d_ev * d_ev * k)));
  const auto at = order_contribution_xx(2.0 / 3.0, th);
  CHECK(at.value == cplx(0.0));
  CHECK(at.flags.has(Flag::AnomalyProximity));
}

TEST_CASE("two-axis sweep layout and thread independence") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const auto g = make_geometry(0.5, Plane::XZ);
  const std::vector<SweepAxis> axes{{SweepParam::OmegaC, {5.0, 10.0}}, {SweepParam::Theta, {0.3, 0.5, 0.7}}};
  const auto dp = axis_values({"delta_p", -5, 5, 4});
  setenv("ARRAYMIRROR_THREADS", "1", 1);
  const auto serial = spectra_sweep(axes, dp, g, DriveField{}, c);
  setenv("ARRAYMIRROR_THREADS", "3", 1);
  const auto threaded = spectra_sweep(axes, dp, g, DriveField{}, c);
  unsetenv("ARRAYMIRROR_THREADS");
  REQUIRE(serial.size() == 24);
  CHECK(serial.columns[0] == "omega_c");
  CHECK(serial.columns[1] == "theta");
  CHECK(serial.columns[2] == "delta_p");
  CHECK(serial.rows[4][0] == 5.0);
  CHECK(serial.rows[4][1] == 0.5);
  CHECK(serial.rows[12][0] == 10.0);
  CHECK(render_csv(serial) == render_csv(threaded));
  CHECK(code_of([&] {
          spectra_sweep({axes[0], axes[1], axes[0]}, dp, g, DriveField{}, c);
        }) == ErrorCode::InvalidArgument);
  CHECK(parse_sweep_param("d") == SweepParam::LatticeConstant);
  CHECK(code_of([] { parse_sweep_param("gamma"); }) == ErrorCode::InvalidArgument);
}

}
