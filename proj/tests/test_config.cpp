// Copyright 2026 hexctl contributors
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

#include "hexctl/config.hpp"
#include "hexctl/errors.hpp"

using namespace hexctl;

TEST_CASE("parses keys, lists and comments") {
  ConfigMap cfg = ConfigMap::parse(
      "# header comment\n"
      "body.mass = 50.5\n"
      "leg.q1_limits = -0.9 0.9  # inline comment\n"
      "\n"
      "gait.custom.duty = 0.6\n");
  CHECK(cfg.get_double("body.mass", 0.0) == 50.5);
  auto lim = cfg.get_list("leg.q1_limits", {0, 0});
  CHECK(lim[0] == -0.9);
  CHECK(lim[1] == 0.9);
  CHECK(cfg.has("gait.custom.duty"));
  CHECK(cfg.get_double("missing.key", 7.0) == 7.0);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    ConfigMap::parse("body.mass = 50.5\nnot a key value line\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
  }

  try {
    ConfigMap cfg = ConfigMap::parse("a = 1\nbody.mass = fifty\n");
    cfg.get_double("body.mass", 0.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("duplicate keys and wrong arity are rejected") {
  CHECK_THROWS_AS(ConfigMap::parse("a = 1\na = 2\n"), ConfigError);
  ConfigMap cfg = ConfigMap::parse("leg.q1_limits = 1 2 3\n");
  CHECK_THROWS_AS(cfg.get_list("leg.q1_limits", {0, 0}), ConfigError);
}

TEST_CASE("serialize parses back to the same values") {
  ConfigMap cfg;
  cfg.set_double("body.mass", 50.5);
  cfg.set_list("envelope.peak_torque", {80, 112, 80});
  cfg.set_string("experiment.gait", "tripod");
  ConfigMap again = ConfigMap::parse(cfg.serialize());
  CHECK(again.get_double("body.mass", 0) == 50.5);
  CHECK(again.get_list("envelope.peak_torque", {0, 0, 0}) ==
        std::vector<double>{80, 112, 80});
  CHECK(again.get_string("experiment.gait", "") == "tripod");
}

TEST_CASE("unread keys are reported") {
  ConfigMap cfg = ConfigMap::parse("known = 1\ntypo.key = 2\n");
  cfg.get_double("known", 0);
  auto unread = cfg.unread_keys();
  REQUIRE(unread.size() == 1);
  CHECK(unread[0] == "typo.key");
}
