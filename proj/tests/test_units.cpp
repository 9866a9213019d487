#include <cmath>
#include <numbers>

#include "arraymirror/units.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arraymirror;

TEST_SUITE("units") {

TEST_CASE("reduced constants") {
  CHECK(kProbeWavenumber == doctest::Approx(2.0 * std::numbers::pi));
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  CHECK(c.wavelength() == 1.0);
  CHECK(c.gamma_e() == 1.0);
  CHECK(c.wavenumber() == kProbeWavenumber);
  CHECK(c.gamma_r() == 0.3);
}

TEST_CASE("config validation") {
  CHECK(code_of([] { make_config(0.0, 0.3, kDipoleZ); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { make_config(1.0, 0.3, kDipoleZ); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { make_config(0.5, -0.1, kDipoleZ); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { make_config(std::nan(""), 0.3, kDipoleZ); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { make_config(0.5, 0.3, Vec3{0, 0, 0}); }) == ErrorCode::BadPolarization);
  CHECK(code_of([] { parse_dipole("y"); }) == ErrorCode::BadPolarization);
  CHECK(code_of([] { make_config(0.5, 0.0, kDipoleX); }) == std::nullopt);
}

TEST_CASE("dipole is normalized") {
  const auto c = make_config(0.3, 0.0, Vec3{1.0, 1.0, 0.0});
  CHECK(norm(c.dipole()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.dipole().x == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("with_lattice_constant revalidates") {
  const auto c = make_config(0.1, 0.3, kDipoleX);
  CHECK(c.with_lattice_constant(0.4).lattice_constant() == 0.4);
  CHECK(c.with_lattice_constant(0.4).gamma_r() == 0.3);
  CHECK(code_of([&] { c.with_lattice_constant(1.2); }) == ErrorCode::OutOfRange);
}

TEST_CASE("laboratory units") {
  // 780 nm probe, 200 nm spacing, 2 pi x 6 MHz and 2 pi x 0.6 MHz linewidths.
  const LabParameters lab{780e-9, 200e-9, 2 * std::numbers::pi * 6e6, 2 * std::numbers::pi * 0.6e6};
  const auto c = from_lab_units(lab, kDipoleZ);
  CHECK(c.lattice_constant() == doctest::Approx(200.0 / 780.0));
  CHECK(c.gamma_r() == doctest::Approx(0.1));
}

TEST_CASE("geometry range and Bloch vector") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  CHECK(code_of([] { make_geometry(-0.1, Plane::XZ); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { make_geometry(0.5 * std::numbers::pi, Plane::XZ); }) == ErrorCode::OutOfRange);
  const auto g = make_geometry(std::numbers::pi / 6, Plane::YZ);
  const auto k = incidence_bloch(g, c);
  CHECK(k.kx == 0.0);
  CHECK(k.ky == doctest::Approx(std::numbers::pi));
  CHECK(k.inside_light_cone);
  CHECK_FALSE(symmetry_point('X', c).inside_light_cone);
  CHECK(incidence_direction(Plane::XZ).x == 1.0);
  CHECK(incidence_direction(Plane::YZ).y == 1.0);
}

TEST_CASE("parsers") {
  CHECK(parse_plane("yz") == Plane::YZ);
  CHECK(parse_probe_polarization("s") == ProbePolarization::S);
  CHECK(code_of([] { parse_plane("xy"); }) == ErrorCode::InvalidArgument);
  CHECK(to_string(Plane::XZ) == "xz");
}

TEST_CASE("GXMG path with 100 intervals per segment") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const auto w = path_waypoints("GXMG", c);
  const auto path = bz_path(w, 101, c);
  REQUIRE(path.size() == 301);
  const double edge = std::numbers::pi / 0.1;
  CHECK(path[100].k.kx == edge);
  CHECK(path[100].k.ky == 0.0);
  CHECK(path[200].k.kx == edge);
  CHECK(path[200].k.ky == edge);
  CHECK(path.back().k.kx == 0.0);
  CHECK(path.back().arc_length == doctest::Approx(edge * (2.0 + std::sqrt(2.0))));
  for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i].arc_length > path[i - 1].arc_length);
}

TEST_CASE("path errors") {
  const auto c = make_config(0.1, 0.3, kDipoleZ);
  const auto w = path_waypoints("GX", c);
  CHECK(code_of([&] { bz_path({w[0]}, 10, c); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { bz_path(w, 1, c); }) == ErrorCode::InvalidArgument);
  const auto outside = make_bloch(40.0, 0.0, c);
  CHECK(code_of([&] { bz_path({w[0], outside}, 10, c); }) == ErrorCode::OutOfZone);
  CHECK(code_of([&] { path_waypoints("GQ", c); }) == ErrorCode::InvalidArgument);
}

}
