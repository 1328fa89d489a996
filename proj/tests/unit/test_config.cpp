// Copyright 2026 The dising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "dising/config.hpp"
#include "dising/io.hpp"

using namespace dising;

TEST_CASE("angles") {
  CHECK(parse_angle("0.25") == 0.25);
  CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_angle("-pi/2") == doctest::Approx(-std::numbers::pi / 2));
  CHECK(parse_angle("0.5*pi") == doctest::Approx(std::numbers::pi / 2));
  CHECK(parse_angle("3pi/4") == doctest::Approx(0.75 * std::numbers::pi));
  CHECK_THROWS_AS(parse_angle("pie"), ConfigError);
  CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
}

TEST_CASE("keys round-trip through text") {
  RunConfig a;
  set_config_value(a, "lambda", "0.17");
  set_config_value(a, "theta0", "pi/3");
  set_config_value(a, "method", "rk45");
  set_config_value(a, "signal", "site:3");
  set_config_value(a, "direction", "-1,1");
  set_config_value(a, "x_axis", "v");
  set_config_value(a, "seed", "18446744073709551615");
  set_config_value(a, "taper", "yes");
  RunConfig b;
  apply_config_text(b, format_config(a));
  CHECK(format_config(a) == format_config(b));
  CHECK(b.params.lambda == 0.17);
  CHECK(b.initial.theta0 == std::numbers::pi / 3);
  CHECK(b.evolve.method == Method::kRk45);
  CHECK(b.signal.site == 2);
  CHECK(b.direction_x == doctest::Approx(-1.0 / std::numbers::sqrt2));
  CHECK(b.grid.x.axis == Axis::kV);
  CHECK(b.initial.seed == 18446744073709551615ull);
  CHECK(b.taper);
}

TEST_CASE("text parsing and errors") {
  RunConfig c;
  apply_config_text(c, "# comment\n\n  v = 9   # trailing\nlambda=0.05\n");
  CHECK(c.params.v == 9.0);
  CHECK(c.params.lambda == 0.05);
  CHECK_THROWS_AS(apply_config_text(c, "nope = 1\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "v 9\n"), ConfigError);
  CHECK_THROWS_AS(set_config_value(c, "n", "six"), ConfigError);
  CHECK_THROWS_AS(set_config_value(c, "dt", "1e-3x"), ConfigError);
  CHECK_THROWS_AS(set_config_value(c, "kernel", "mmx"), ConfigError);
  try {
    apply_config_text(c, "v = 1\nomega = x\n", "run.cfg");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
  }
}

TEST_CASE("validation of the assembled config") {
  RunConfig c;
  c.validate();
  c.params.lambda = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.params.n_sites = 3;
  c.validate();
}

TEST_CASE("every key is documented and serialized") {
  const RunConfig c;
  const auto entries = config_entries(c);
  REQUIRE(entries.size() == config_keys().size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].first == config_keys()[i].name);
    CHECK_FALSE(config_keys()[i].help.empty());
  }
  std::ostringstream out;
  write_config_comments(out, c);
  CHECK(out.str().rfind("# dising ", 0) == 0);
  CHECK(out.str().find("# lambda = 0.5\n") != std::string::npos);
}

TEST_CASE("trajectory CSV layout") {
  Trajectory t;
  t.n_sites = 2;
  t.sample_interval = 0.5;
  t.times = {0.0, 0.5};
  t.populations = {{0.1, 0.2}, {0.3, 0.4}};
  t.n_odd = {0.1, 0.3};
  t.n_even = {0.2, 0.4};
  std::ostringstream out;
  write_trajectory_csv(out, t, RunConfig{});
  std::istringstream in(out.str());
  std::string line, header;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) continue;
    rows.push_back(line);
  }
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "t,n_1,n_2,n_odd,n_even");
  CHECK(rows[2] == "0.5,0.3,0.4,0.3,0.4");
}

TEST_CASE("output files") {
  const auto dir = std::filesystem::temp_directory_path() / "dising_unit_io";
  std::filesystem::remove_all(dir);
  const std::string path = output_path(dir.string(), "a/b.txt");
  write_file(path, "x\n");
  CHECK(std::filesystem::file_size(path) == 2);
  CHECK(output_path("out", "/abs/file") == "/abs/file");
  std::filesystem::remove_all(dir);
}
