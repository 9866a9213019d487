#include <string>

#include "arraymirror/config_file.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace arraymirror;

TEST_SUITE("config") {

TEST_CASE("flat key value file") {
  const auto c = parse_config_text(
      "# array\n"
      "lattice_constant = 0.2\n"
      "gamma_r = 0.3   # upper level\n"
      "polarization = \"x\"\n"
      "\n"
      "plane = \"yz\"\n"
      "theta = 0.5\n"
      "omega_c = 10\n"
      "delta_c = -2.5\n");
  CHECK(*c.lattice_constant == 0.2);
  CHECK(*c.gamma_r == 0.3);
  CHECK(*c.polarization == "x");
  CHECK(*c.plane == "yz");
  CHECK(*c.theta == 0.5);
  CHECK(*c.omega_c == 10.0);
  CHECK(*c.delta_c == -2.5);
}

TEST_CASE("missing keys stay unset") {
  const auto c = parse_config_text("theta = 0.1\n");
  CHECK_FALSE(c.lattice_constant.has_value());
  CHECK(c.theta.has_value());
}

TEST_CASE("malformed input names the line") {
  for (const char* bad : {"theta = 0.1\nfoo = 1\n", "theta = 0.1\ntheta 0.2\n", "theta = 0.1\nplane = \"xz\n",
                          "theta = 0.1\ntheta = abc\n", "theta = 0.1\n[section]\n"}) {
    try {
      parse_config_text(bad);
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("unreadable file") {
  CHECK(code_of([] { load_config_file("/nonexistent/config.toml"); }) == ErrorCode::IoError);
}

}
