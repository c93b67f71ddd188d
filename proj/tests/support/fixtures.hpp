// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tdsim/config.hpp"
#include "tdsim/deployment.hpp"

namespace tdsim::testing {

inline SimConfig default_config(std::uint64_t seed = 1) {
  SimConfig c;
  c.seed = seed;
  c.finalize();
  return c;
}

// A small hand-built two-tier topology: macro with `macro_users` users and
// `num_smalls` small cells with `small_users` users each. Positions are laid
// out deterministically; pilots follow the standard per-cell assignment.
inline deploy::NetworkTopology small_topology(int macro_users, int num_smalls,
                                              int small_users, int m_antennas = 16,
                                              int sbs_antennas = 2) {
  deploy::NetworkTopology topo;
  topo.area_m2 = 1e6;
  topo.macro = {0, deploy::Tier::Macro, {0.0, 0.0}, m_antennas, dbm_to_watt(43.0)};
  int user_id = 0;
  for (int i = 0; i < macro_users; ++i) {
    topo.users.push_back(
        {user_id++, {150.0 + 40.0 * i, 80.0}, 0, -1, dbm_to_watt(23.0)});
  }
  for (int s = 0; s < num_smalls; ++s) {
    const double x = 320.0 + 140.0 * s;
    topo.smalls.push_back(
        {s + 1, deploy::Tier::Small, {x, -260.0}, sbs_antennas, dbm_to_watt(25.0)});
    for (int i = 0; i < small_users; ++i) {
      topo.users.push_back(
          {user_id++, {x + 12.0 + 9.0 * i, -245.0}, s + 1, -1, dbm_to_watt(23.0)});
    }
  }
  deploy::assign_pilots(topo);
  return topo;
}

}  // namespace tdsim::testing
