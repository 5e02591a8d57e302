#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "parosc/scenario.hpp"

using namespace parosc;

TEST_CASE("round trip is idempotent") {
  for (const auto& name : preset_names()) {
    const Scenario s = preset_scenario(name);
    const std::string once = serialize_scenario(s);
    const std::string twice = serialize_scenario(parse_scenario(once));
    CHECK(once == twice);
  }
}

TEST_CASE("parser accepts comments and whitespace") {
  const Scenario s = parse_scenario(
      "# a comment\n"
      "[profile]\n"
      "kind = tanh_step   ; trailing note\n"
      "k = 0.25\n"
      "omega1 = 7\n"
      "omega2 = 2\n"
      "\n[times]\n  t_start = -1\n  t_end = 3\n  samples = 11\n");
  CHECK(s.profile_kind == "tanh_step");
  CHECK(s.k == 0.25);
  CHECK(s.omega1 == 7.0);
  CHECK(s.samples == 11);
  CHECK(s.m == 1.0);  // untouched defaults
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_scenario("[profile\nkind = zero\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("[profile]\nmystery = 3\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("[physical]\nm = abc\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("[times]\nsamples = 2.5\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("no equals sign here\n"),
                  std::invalid_argument);
}

TEST_CASE("build validation") {
  Scenario s = preset_scenario("constant");
  s.m = -1.0;
  CHECK_THROWS_AS(build_run(s), std::invalid_argument);
  s = preset_scenario("constant");
  s.t_end = s.t_start;
  CHECK_THROWS_AS(build_run(s), std::invalid_argument);
  s = preset_scenario("constant");
  s.profile_kind = "wiggly";
  CHECK_THROWS_AS(build_run(s), std::invalid_argument);
  s = preset_scenario("constant");
  s.force_kind = "impulse";
  CHECK_THROWS_AS(build_run(s), std::invalid_argument);
  CHECK_THROWS_AS(preset_scenario("nope"), std::invalid_argument);
}

TEST_CASE("free preset reproduces the spreading width") {
  const auto run = build_run(preset_scenario("free_particle"));
  for (double t = -5.0; t <= 5.0; t += 0.5)
    CHECK(std::abs(run.data->sigma(t) - std::sqrt(1.0 + t * t)) < 1e-10);
}

TEST_CASE("grid override takes effect") {
  const auto run = build_run(preset_scenario("constant"), 512);
  CHECK(run.grid.n == 512);
}

TEST_CASE("csv output is deterministic and lossless") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto f1 = dir / "parosc_csv_a.csv";
  const auto f2 = dir / "parosc_csv_b.csv";
  const std::vector<std::vector<double>> rows = {
      {0.1, 1.0 / 3.0}, {-2.5e-17, 1e300}};
  write_csv(f1, {"a", "b"}, rows);
  write_csv(f2, {"a", "b"}, rows);
  std::ostringstream s1, s2;
  s1 << std::ifstream(f1).rdbuf();
  s2 << std::ifstream(f2).rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().substr(0, 4) == "a,b\n");
  // 17 significant digits round-trip exactly
  CHECK(std::stod(format_g17(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_g17(-2.5e-17)) == -2.5e-17);
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
}

TEST_CASE("scenario file loading") {
  const auto file = std::filesystem::temp_directory_path() / "parosc_s.ini";
  {
    std::ofstream out(file);
    out << serialize_scenario(preset_scenario("tanh_step"));
  }
  const Scenario s = load_scenario(file);
  CHECK(s.name == "tanh_step");
  CHECK(s.omega1 == 5.0);
  std::filesystem::remove(file);
  CHECK_THROWS_AS(load_scenario(file), std::invalid_argument);
}
