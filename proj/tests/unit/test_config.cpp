// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tdsim/config.hpp"

using namespace tdsim;
using nlohmann::json;

TEST_SUITE("config") {

TEST_CASE("defaults match the reference parameter table") {
  const SimConfig c = config_from_json(json::object(), "<test>");
  CHECK(c.area_km2 == 1.0);
  CHECK(c.lambda_sc == 0.6);
  CHECK(c.lambda_u == 50.0);
  CHECK(c.p_mbs_dbm == 43.0);
  CHECK(c.p_sbs_dbm == 25.0);
  CHECK(c.alpha_e == 3.0);
  CHECK(c.n_data == 8);
  CHECK(c.m_antennas == 128);
  CHECK(c.sbs_antennas == 2);
  CHECK(c.frames == 20);
  CHECK(c.drops == 50);
}

TEST_CASE("dBm conversion happens once at the boundary") {
  const SimConfig c = config_from_json(json::object(), "<test>");
  CHECK(c.p_mbs_w == doctest::Approx(19.952623149688797).epsilon(1e-12));
  CHECK(c.p_sbs_w == doctest::Approx(0.31622776601683794).epsilon(1e-12));
  CHECK(c.gamma_lin == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(c.noise_w == doctest::Approx(3.1622776601683794e-13).epsilon(1e-12));
  CHECK(c.area_m2 == 1e6);
}

TEST_CASE("round trip") {
  json j = {{"lambda_sc", 1.5}, {"m_antennas", 64}, {"seed", 99}};
  const SimConfig c = config_from_json(j, "<test>");
  const SimConfig back = config_from_json(to_json(c), "<roundtrip>");
  CHECK(to_json(back) == to_json(c));
  CHECK(back.lambda_sc == 1.5);
  CHECK(back.m_antennas == 64);
  CHECK(back.seed == 99);
}

TEST_CASE("unknown keys are rejected with their path") {
  json j = {{"lambda_sc", 1.5}, {"lambda_typo", 2.0}};
  CHECK_THROWS_WITH_AS(config_from_json(j, "<test>"),
                       doctest::Contains("lambda_typo"), ConfigError);
}

TEST_CASE("out-of-range values name the key") {
  CHECK_THROWS_WITH_AS(config_from_json(json{{"alpha_e", 2.0}}, "<t>"),
                       doctest::Contains("alpha_e"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"n_data", 0}}, "<t>"),
                       doctest::Contains("n_data"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"area_km2", -1.0}}, "<t>"),
                       doctest::Contains("area_km2"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"m_antennas", 1.5}}, "<t>"),
                       doctest::Contains("m_antennas"), ConfigError);
  CHECK_THROWS_WITH_AS(config_from_json(json{{"seed", -3}}, "<t>"),
                       doctest::Contains("seed"), ConfigError);
}

TEST_CASE("set overrides") {
  json j = json::object();
  apply_override(j, "m_antennas=64");
  apply_override(j, "gamma_db=13");
  const SimConfig c = config_from_json(j, "<test>");
  CHECK(c.m_antennas == 64);
  CHECK(c.gamma_db == 13.0);
  CHECK_THROWS_AS(apply_override(j, "no_equals_sign"), ConfigError);
}

TEST_CASE("config hash tracks content") {
  const SimConfig a = config_from_json(json::object(), "<t>");
  const SimConfig b = config_from_json(json{{"seed", 2}}, "<t>");
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a) == config_hash(config_from_json(json::object(), "<t>")));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("file parsing errors") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tdsim_config_test";
  fs::create_directories(dir);
  const fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << "{ not json";
  }
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  CHECK_THROWS_AS(parse_config(dir / "missing.json"), ConfigError);

  const fs::path good = dir / "good.json";
  {
    std::ofstream out(good);
    out << R"({"drops": 3, "frames": 2})";
  }
  const SimConfig c = parse_config(good);
  CHECK(c.drops == 3);
  CHECK(c.frames == 2);
  fs::remove_all(dir);
}

}  // TEST_SUITE
