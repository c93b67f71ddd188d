// SPDX-License-Identifier: Apache-2.0
#include "tdsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace tdsim {

using nlohmann::json;

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void SimConfig::finalize() {
  p_mbs_w = dbm_to_watt(p_mbs_dbm);
  p_sbs_w = dbm_to_watt(p_sbs_dbm);
  p_ue_w = dbm_to_watt(p_ue_dbm);
  gamma_lin = db_to_linear(gamma_db);
  noise_w = dbm_to_watt(noise_dbm);
  area_m2 = area_km2 * 1e6;
}

namespace {

void require(bool ok, const std::string& key, const std::string& what,
             const std::string& source) {
  if (!ok) throw ConfigError("config error at '" + key + "' (" + source + "): " + what);
}

double get_number(const json& j, const std::string& key, double fallback,
                  const std::string& source) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_number(), key, "expected a number", source);
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback, const std::string& source) {
  if (!j.contains(key)) return fallback;
  require(j[key].is_number_integer(), key, "expected an integer", source);
  return j[key].get<int>();
}

}  // namespace

SimConfig config_from_json(const json& j, const std::string& source) {
  static const std::set<std::string> known = {
      "area_km2",  "lambda_sc",    "lambda_u", "p_mbs_dbm", "p_sbs_dbm", "p_ue_dbm",
      "alpha_e",   "m_antennas",   "sbs_antennas", "n_data", "gamma_db", "noise_dbm",
      "frames",    "drops",        "two_cell_draws", "seed"};
  require(j.is_object(), "$", "config root must be an object", source);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    require(known.count(key) > 0, key, "unknown key", source);
  }

  SimConfig c;
  c.area_km2 = get_number(j, "area_km2", c.area_km2, source);
  c.lambda_sc = get_number(j, "lambda_sc", c.lambda_sc, source);
  c.lambda_u = get_number(j, "lambda_u", c.lambda_u, source);
  c.p_mbs_dbm = get_number(j, "p_mbs_dbm", c.p_mbs_dbm, source);
  c.p_sbs_dbm = get_number(j, "p_sbs_dbm", c.p_sbs_dbm, source);
  c.p_ue_dbm = get_number(j, "p_ue_dbm", c.p_ue_dbm, source);
  c.alpha_e = get_number(j, "alpha_e", c.alpha_e, source);
  c.m_antennas = get_int(j, "m_antennas", c.m_antennas, source);
  c.sbs_antennas = get_int(j, "sbs_antennas", c.sbs_antennas, source);
  c.n_data = get_int(j, "n_data", c.n_data, source);
  c.gamma_db = get_number(j, "gamma_db", c.gamma_db, source);
  c.noise_dbm = get_number(j, "noise_dbm", c.noise_dbm, source);
  c.frames = get_int(j, "frames", c.frames, source);
  c.drops = get_int(j, "drops", c.drops, source);
  c.two_cell_draws = get_int(j, "two_cell_draws", c.two_cell_draws, source);
  if (j.contains("seed")) {
    const bool non_negative =
        j["seed"].is_number_unsigned() ||
        (j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0);
    require(non_negative, "seed", "expected a non-negative integer", source);
    c.seed = j["seed"].get<std::uint64_t>();
  }

  require(c.area_km2 > 0.0, "area_km2", "must be > 0", source);
  require(c.lambda_sc >= 0.0, "lambda_sc", "must be >= 0", source);
  require(c.lambda_u >= 0.0, "lambda_u", "must be >= 0", source);
  require(c.alpha_e > 2.0, "alpha_e", "pathloss exponent must be > 2", source);
  require(c.m_antennas >= 1, "m_antennas", "must be >= 1", source);
  require(c.sbs_antennas >= 1, "sbs_antennas", "must be >= 1", source);
  require(c.n_data >= 1, "n_data", "must be >= 1", source);
  require(c.gamma_db >= 0.0, "gamma_db", "boost must be >= 0 dB", source);
  require(c.frames >= 1, "frames", "must be >= 1", source);
  require(c.drops >= 1, "drops", "must be >= 1", source);
  require(c.two_cell_draws >= 1, "two_cell_draws", "must be >= 1", source);

  c.finalize();
  return c;
}

SimConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config file " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.string());
}

json to_json(const SimConfig& c) {
  return json{{"area_km2", c.area_km2},
              {"lambda_sc", c.lambda_sc},
              {"lambda_u", c.lambda_u},
              {"p_mbs_dbm", c.p_mbs_dbm},
              {"p_sbs_dbm", c.p_sbs_dbm},
              {"p_ue_dbm", c.p_ue_dbm},
              {"alpha_e", c.alpha_e},
              {"m_antennas", c.m_antennas},
              {"sbs_antennas", c.sbs_antennas},
              {"n_data", c.n_data},
              {"gamma_db", c.gamma_db},
              {"noise_dbm", c.noise_dbm},
              {"frames", c.frames},
              {"drops", c.drops},
              {"two_cell_draws", c.two_cell_draws},
              {"seed", c.seed}};
}

void apply_override(json& j, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set expects KEY=VALUE, got '" + key_eq_value + "'");
  }
  const std::string key = key_eq_value.substr(0, eq);
  const std::string value = key_eq_value.substr(eq + 1);
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // keep raw strings as strings
  j[key] = parsed;
}

std::string config_hash(const SimConfig& config) {
  const std::string dump = to_json(config).dump();
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tdsim
