#include <cmath>
#include <complex>
#include <numbers>

#include "arraymirror/faddeeva.hpp"
#include "arraymirror/green.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arraymirror;

namespace {

constexpr double kPi = std::numbers::pi;

// Gaussian-damped real-space sums with Richardson extrapolation: a route to
// the shift independent of the Ewald split.
AccelParams damped() {
  AccelParams a;
  a.method = SumMethod::GaussianRichardson;
  return a;
}

}  // namespace

TEST_SUITE("green") {

TEST_CASE("faddeeva against real erfc and known values") {
  for (double x = -3.0; x <= 3.0; x += 0.25) {
    CHECK(std::abs(cerfc({x, 0.0}) - std::erfc(x)) < 1e-13);
  }
  for (double y = 0.1; y <= 5.0; y += 0.3) {
    const double expect = std::exp(y * y) * std::erfc(y);
    CHECK(std::abs(faddeeva_upper({0.0, y}) - expect) < 1e-13 * expect);
  }
  const auto w = faddeeva_upper({1.0, 1.0});
  CHECK(w.real() == doctest::Approx(0.30474420525691259).epsilon(1e-12));
  CHECK(w.imag() == doctest::Approx(0.20821893820283163).epsilon(1e-12));
  // erfc(z) + erfc(-z) = 2 in every quadrant.
  const std::complex<double> z{-0.7, -1.3};
  CHECK(std::abs(cerfc(z) + cerfc(-z) - 2.0) < 1e-13);
}

TEST_CASE("free-space Green tensor closed form") {
  const double k = kProbeWavenumber;
  const auto g = free_green({0.5, 0.0, 0.0}, k);
  const double kr = k * 0.5;
  const std::complex<double> pre = std::exp(std::complex<double>(0, kr)) / (4 * kPi * 0.5);
  const std::complex<double> yy = pre * std::complex<double>(1 - 1 / (kr * kr), 1 / kr);
  const std::complex<double> xx = pre * std::complex<double>(2 / (kr * kr), -2 / kr);
  CHECK(std::abs(g(1, 1) - yy) < 1e-14);
  CHECK(std::abs(g(0, 0) - xx) < 1e-14);
  CHECK(std::abs(g(1, 1) - std::complex<double>(-0.14303, -0.05066)) < 1e-5);
  CHECK(std::abs(g(0, 1)) == 0.0);
}

TEST_CASE("free-space Green tensor is symmetric") {
  const auto g = free_green({0.31, -0.2, 0.17}, kProbeWavenumber);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(g(i, j) - g(j, i)) < 1e-15);
  CHECK(code_of([] { free_green({0, 0, 0}, kProbeWavenumber); }) == ErrorCode::ZeroDisplacement);
}

TEST_CASE("reciprocal orders are sorted") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const auto orders = reciprocal_orders(make_bloch(1.0, 0.5, c), c, 2);
  REQUIRE(orders.size() == 25);
  CHECK(orders[0].mx == 0);
  CHECK(orders[0].my == 0);
  CHECK(orders[0].propagating);
  for (std::size_t i = 1; i < orders.size(); ++i) {
    const int a = orders[i - 1].mx * orders[i - 1].mx + orders[i - 1].my * orders[i - 1].my;
    const int b = orders[i].mx * orders[i].mx + orders[i].my * orders[i].my;
    CHECK(a <= b);
    CHECK_FALSE(orders[i].propagating);
    CHECK(orders[i].kappa.imag() > 0.0);
  }
}

TEST_CASE("decay rate closed forms") {
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto g = make_bloch(0, 0, cx);
  CHECK(gamma_k(g, cx).value == doctest::Approx(3.0 / (4.0 * kPi * 0.01)).epsilon(1e-12));
  CHECK(gamma_k(g, cz).value == 0.0);
  CHECK(gamma_k(g, cz).propagating_orders == 1);
  // z dipole at angle theta: Gamma_0 sin^2(theta) / cos(theta).
  const double th = 0.45 * kPi;
  const auto k = make_bloch(kProbeWavenumber * std::sin(th), 0.0, cz);
  const double expect = 3.0 / (4.0 * kPi * 0.01) * std::sin(th) * std::sin(th) / std::cos(th);
  CHECK(gamma_k(k, cz).value == doctest::Approx(expect).epsilon(1e-12));
  // Outside the light cone nothing radiates.
  CHECK(gamma_k(make_bloch(20.0, 0.0, cz), cz).value == 0.0);
  CHECK(gamma_k(make_bloch(20.0, 0.0, cz), cz).propagating_orders == 0);
}

TEST_CASE("divergence on the light cone is flagged") {
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto r = gamma_k(make_bloch(kProbeWavenumber, 0.0, cz), cz);
  CHECK(std::isinf(r.value));
  CHECK(r.flags.has(Flag::AnomalyDivergence));
  // An x dipole has no weight on the grazing order along x.
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const auto rx = gamma_k(make_bloch(kProbeWavenumber, 0.0, cx), cx);
  CHECK(std::isfinite(rx.value));
  CHECK(rx.flags.has(Flag::AnomalyProximity));
}

TEST_CASE("Ewald sum is independent of the splitting parameter") {
  const auto c = make_config(0.2, 0.3, kDipoleX);
  const auto k = make_bloch(2.0, 1.0, c);
  Flags f;
  const auto s0 = lattice_sum_ewald(k, c, 1.0, f);
  for (double scale : {0.7, 1.4}) {
    const auto s = lattice_sum_ewald(k, c, scale, f);
    CHECK(std::abs(s - s0) < 1e-10 * std::abs(s0));
  }
  CHECK(1.0 + 3.0 * s0.imag() == doctest::Approx(gamma_k(k, c).value).epsilon(1e-9));
}

TEST_CASE("frozen shifts at d = 0.1") {
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const double kp = kProbeWavenumber * std::sin(0.45 * kPi);
  CHECK(delta_k(make_bloch(0, 0, cz), cz).value == doctest::Approx(29.60106130).epsilon(1e-8));
  CHECK(delta_k(make_bloch(0, 0, cx), cx).value == doctest::Approx(-10.19907731).epsilon(1e-8));
  CHECK(delta_k(make_bloch(kp, 0, cz), cz).value == doctest::Approx(30.72358424).epsilon(1e-8));
  CHECK(delta_k(make_bloch(kp, 0, cx), cx).value == doctest::Approx(-11.17832343).epsilon(1e-8));
  CHECK(delta_k(make_bloch(0, kp, cx), cx).value == doctest::Approx(-10.39693329).epsilon(1e-8));
}

TEST_CASE("Ewald and damped real-space sums agree") {
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const auto k = make_bloch(0, 0, cx);
  const auto a = delta_k(k, cx);
  const auto b = delta_k(k, cx, damped());
  CHECK(std::abs(a.value - b.value) < 1e-6);
  const auto rs = gamma_k_realspace(k, cx);
  CHECK(rs.value == doctest::Approx(gamma_k(k, cx).value).epsilon(1e-3));
}

TEST_CASE("shift symmetries of the square lattice") {
  const auto cz = make_config(0.15, 0.3, kDipoleZ);
  const double a = delta_k(make_bloch(3.0, 1.2, cz), cz).value;
  CHECK(delta_k(make_bloch(1.2, 3.0, cz), cz).value == doctest::Approx(a).epsilon(1e-10));
  CHECK(delta_k(make_bloch(-3.0, 1.2, cz), cz).value == doctest::Approx(a).epsilon(1e-10));
  CHECK(delta_k(make_bloch(3.0, -1.2, cz), cz).value == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("damped sums refuse a light-cone crossing") {
  const auto cz = make_config(0.1, 0.3, kDipoleZ);
  const auto k = make_bloch(kProbeWavenumber * (1.0 - 1e-6), 0.0, cz);
  CHECK(light_cone_gap(k, cz) == doctest::Approx(kProbeWavenumber * 1e-6).epsilon(1e-6));
  CHECK(code_of([&] { delta_k(k, cz, damped()); }) == ErrorCode::NoConvergence);
  CHECK(code_of([&] { gamma_k_realspace(make_bloch(0, 0, cz), cz, 10.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("eta combines shift and rate") {
  const auto cx = make_config(0.1, 0.3, kDipoleX);
  const auto m = eta(make_bloch(0, 0, cx), cx);
  CHECK(m.eta.real() == m.delta);
  CHECK(m.eta.imag() == doctest::Approx(-0.5 * m.gamma));
  CHECK(m.propagating_orders == 1);
}

}
