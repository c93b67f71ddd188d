// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tdsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat experiment configuration. Defaults reproduce the reference setup:
// 1 km^2 macro area, 0.6 small cells and 50 users per km^2, 43/25 dBm tier
// powers, pathloss exponent 3, 8 data slots per frame. dBm-to-watt
// conversion happens exactly once, in finalize(); everything downstream
// works in linear watts.
struct SimConfig {
  double area_km2 = 1.0;
  double lambda_sc = 0.6;   // small cells per km^2
  double lambda_u = 50.0;   // users per km^2
  double p_mbs_dbm = 43.0;
  double p_sbs_dbm = 25.0;
  double p_ue_dbm = 23.0;
  double alpha_e = 3.0;
  int m_antennas = 128;
  int sbs_antennas = 2;
  int n_data = 8;
  double gamma_db = 10.0;
  double noise_dbm = -95.0;  // -174 dBm/Hz + 10 MHz + 9 dB noise figure
  int frames = 20;
  int drops = 50;
  int two_cell_draws = 2000;
  std::uint64_t seed = 1;

  // Derived linear quantities, valid after finalize().
  double p_mbs_w = 0.0;
  double p_sbs_w = 0.0;
  double p_ue_w = 0.0;
  double gamma_lin = 0.0;
  double noise_w = 0.0;
  double area_m2 = 0.0;

  void finalize();
};

double dbm_to_watt(double dbm);
double db_to_linear(double db);

// Strict parsing: unknown keys and out-of-range values are rejected with the
// offending key path in the message. Omitted keys take their defaults.
SimConfig config_from_json(const nlohmann::json& j, const std::string& source);
SimConfig parse_config(const std::filesystem::path& path);

// Canonical serialization; parse(serialize(c)) == c.
nlohmann::json to_json(const SimConfig& config);

// In-place `key=value` override on the raw JSON (the CLI --set flag).
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

// FNV-1a 64 over the canonical serialization, hex-encoded.
std::string config_hash(const SimConfig& config);

}  // namespace tdsim
