#include <filesystem>
#include <fstream>
#include <sstream>

#include "arraymirror/table.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace arraymirror;

namespace {

SweepTable sample() {
  SweepTable t;
  t.columns = {"a", "b"};
  t.add_row({1.0, -0.25});
  t.add_row({2.5, 1e-20}, Flags(Flag::AnomalyProximity) | Flags(Flag::NoConvergence));
  t.meta["note"] = "x";
  return t;
}

}  // namespace

TEST_SUITE("table") {

TEST_CASE("axis values are inclusive") {
  const auto v = axis_values({"x", -1.0, 1.0, 5});
  REQUIRE(v.size() == 5);
  CHECK(v.front() == -1.0);
  CHECK(v[2] == 0.0);
  CHECK(v.back() == 1.0);
  CHECK(code_of([] { axis_values({"x", 0.0, 1.0, 1}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("axis parsing") {
  const auto a = parse_axis("delta_p", "-40:60:1001");
  CHECK(a.min == -40.0);
  CHECK(a.max == 60.0);
  CHECK(a.count == 1001);
  for (const char* bad : {"1:2", "a:2:3", "1:2:3:4", "1:2:x", "", "1:inf:3"}) {
    CHECK(code_of([&] { parse_axis("x", bad); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("csv layout") {
  const std::string csv = render_csv(sample());
  CHECK(csv ==
        "a,b,flags\n"
        "1.000000000000e+00,-2.500000000000e-01,\n"
        "2.500000000000e+00,1.000000000000e-20,anomaly_proximity|no_convergence\n");
  CHECK(render_csv(sample()) == csv);
}

TEST_CASE("json layout") {
  const auto j = nlohmann::json::parse(render_json(sample()));
  CHECK(j["meta"]["note"] == "x");
  CHECK(j["meta"]["version"] == "1.0.0");
  CHECK(j["data"]["a"][1] == 2.5);
  CHECK(j["data"]["flags"][0] == "");
  CHECK(j["data"]["flags"][1] == "anomaly_proximity|no_convergence");
}

TEST_CASE("column access and row checks") {
  auto t = sample();
  CHECK(t.column("b") == 1);
  CHECK(t.column_values("a") == std::vector<double>{1.0, 2.5});
  CHECK(code_of([&] { t.column("c"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { t.add_row({1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("writing tables") {
  const auto path = std::filesystem::path(ARRAYMIRROR_TEST_DIR) / "table_out.csv";
  write_table(sample(), TableFormat::Csv, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == render_csv(sample()));
  CHECK(code_of([] { write_table(SweepTable{}, TableFormat::Csv, "unused.csv"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { write_table(sample(), TableFormat::Json, "/nonexistent/dir/out.json"); }) ==
        ErrorCode::IoError);
  CHECK(parse_format("json") == TableFormat::Json);
  CHECK(code_of([] { parse_format("xml"); }) == ErrorCode::InvalidArgument);
}

}
