// SPDX-License-Identifier: Apache-2.0
#include "tdsim/training.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tdsim/beamforming.hpp"

namespace tdsim::training {

using channel::CVec;

PilotBook make_pilot_book(int num_pilots) {
  if (num_pilots < 1) throw std::invalid_argument("pilot book needs K >= 1");
  PilotBook book;
  book.rows.resize(num_pilots, num_pilots);
  for (int k = 0; k < num_pilots; ++k) {
    for (int j = 0; j < num_pilots; ++j) {
      const double phase = -2.0 * std::numbers::pi * k * j / num_pilots;
      book.rows(k, j) = std::polar(1.0, phase);
    }
  }
  return book;
}

namespace {

// The (unique) user of `cell` holding pilot index `pilot`, or -1.
int user_with_pilot(const deploy::NetworkTopology& topo, int cell, int pilot) {
  for (const int u : topo.users_of_cell.at(cell)) {
    if (topo.users[u].pilot_index == pilot) return u;
  }
  return -1;
}

}  // namespace

ChannelEstimate estimate_contaminated(const deploy::NetworkTopology& topology,
                                      const channel::ChannelSet& channels, int target_user,
                                      std::span<const int> su_cells,
                                      std::span<const int> sd_cells, double noise_power_w,
                                      Rng& z_rng) {
  if (target_user < 0 || target_user >= static_cast<int>(topology.users.size())) {
    throw std::invalid_argument("unknown target user");
  }
  const auto& target = topology.users[target_user];
  const int serving = target.serving_cell;
  const int pilot = target.pilot_index;
  if (serving < 0 || pilot < 0) {
    throw std::invalid_argument("target user has no association or pilot");
  }

  ChannelEstimate est;
  const double clean_amp =
      std::sqrt(channels.alpha_bs_user(serving, target_user) * target.ul_power_w);
  est.vec = clean_amp * channels.user_link(serving, target_user);

  for (const int cell : su_cells) {
    if (cell == serving) continue;
    const int other = user_with_pilot(topology, cell, pilot);
    if (other < 0) continue;
    const double amp =
        std::sqrt(channels.alpha_bs_user(serving, other) * topology.users[other].ul_power_w);
    est.vec += amp * channels.user_link(serving, other);
    est.provenance.push_back({other, ContaminantKind::BsToUser, amp});
  }

  for (const int cell : sd_cells) {
    if (cell == serving) continue;
    const int other = user_with_pilot(topology, cell, pilot);
    if (other < 0) continue;
    // The interfering cell transmitted pilot k through the unit-norm weight
    // it uses toward its own pilot-k user, so the contaminating term is the
    // B2B block applied to that weight.
    const CVec w = beam::mrt_precoder(channels.user_link(cell, other));
    const double amp =
        std::sqrt(channels.alpha_bs_bs(serving, cell) * topology.cell(cell).tx_power_w);
    est.vec += amp * (channels.bs_link(serving, cell) * w);
    est.provenance.push_back({cell, ContaminantKind::BsToBs, amp});
  }

  if (noise_power_w > 0.0) {
    const double scale = std::sqrt(noise_power_w);
    for (Eigen::Index i = 0; i < est.vec.size(); ++i) {
      est.vec(i) += scale * z_rng.next_cgaussian();
    }
  }
  return est;
}

ChannelEstimate estimate_pcru(const deploy::NetworkTopology& topology,
                              const channel::ChannelSet& channels, int target_user,
                              std::span<const int> candidate_users, double noise_power_w,
                              Rng& z_rng) {
  // Reduce the explicit user list to per-cell candidates; pilot filtering in
  // the shared path then applies the orthogonality cancellation.
  std::vector<int> cells;
  const int pilot = topology.users.at(target_user).pilot_index;
  for (const int u : candidate_users) {
    const auto& user = topology.users.at(u);
    if (user.pilot_index != pilot) continue;  // orthogonal: contributes zero
    cells.push_back(user.serving_cell);
  }
  return estimate_contaminated(topology, channels, target_user, cells, {}, noise_power_w,
                               z_rng);
}

ChannelEstimate estimate_pcrd(const deploy::NetworkTopology& topology,
                              const channel::ChannelSet& channels, int target_user,
                              std::span<const int> candidate_cells, double noise_power_w,
                              Rng& z_rng) {
  return estimate_contaminated(topology, channels, target_user, {}, candidate_cells,
                               noise_power_w, z_rng);
}

}  // namespace tdsim::training
