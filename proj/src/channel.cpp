// SPDX-License-Identifier: Apache-2.0
#include "tdsim/channel.hpp"

#include <stdexcept>

namespace tdsim::channel {

namespace {
// Substream tags for per-link draws.
constexpr std::uint64_t kTagBsUser = 11;
constexpr std::uint64_t kTagBsBs = 12;
}  // namespace

CMat draw_fading(int rx_antennas, int tx_antennas, Rng& rng) {
  if (rx_antennas < 1 || tx_antennas < 1) {
    throw std::invalid_argument("fading block dimensions must be >= 1");
  }
  CMat h(rx_antennas, tx_antennas);
  for (int r = 0; r < rx_antennas; ++r) {
    for (int c = 0; c < tx_antennas; ++c) {
      h(r, c) = rng.next_cgaussian();
    }
  }
  return h;
}

CMat reciprocal(const CMat& h) { return h.transpose(); }

CMat link_gain(const CMat& h, double alpha, double power_w) {
  if (!(alpha > 0.0)) throw std::invalid_argument("link_gain requires alpha > 0");
  if (!(power_w > 0.0)) throw std::invalid_argument("link_gain requires power > 0");
  return std::sqrt(alpha * power_w) * h;
}

int ChannelSet::index_bs_user(int cell, int user) const {
  if (cell < 0 || cell >= num_cells_ || user < 0 || user >= num_users_) {
    throw std::out_of_range("no channel drawn for this (cell, user) link");
  }
  return cell * num_users_ + user;
}

int ChannelSet::index_bs_bs(int a, int b) const {
  if (a < 0 || b <= a || b >= num_cells_) {
    throw std::out_of_range("no channel drawn for this (cell, cell) link");
  }
  // Upper-triangle packing of (a, b) with a < b.
  return a * num_cells_ - a * (a + 1) / 2 + (b - a - 1);
}

const CVec& ChannelSet::user_link(int cell, int user) const {
  return bs_user_[index_bs_user(cell, user)];
}

CMat ChannelSet::bs_link(int rx_cell, int tx_cell) const {
  if (rx_cell == tx_cell) throw std::invalid_argument("no self link");
  const int lo = std::min(rx_cell, tx_cell);
  const int hi = std::max(rx_cell, tx_cell);
  const CMat& canonical = bs_bs_[index_bs_bs(lo, hi)];  // oriented into `lo`
  return rx_cell == lo ? canonical : reciprocal(canonical);
}

double ChannelSet::alpha_bs_user(int cell, int user) const {
  return alpha_bs_user_[index_bs_user(cell, user)];
}

double ChannelSet::alpha_bs_bs(int cell_a, int cell_b) const {
  const int lo = std::min(cell_a, cell_b);
  const int hi = std::max(cell_a, cell_b);
  return alpha_bs_bs_[index_bs_bs(lo, hi)];
}

double ChannelSet::alpha_user_user(int user_a, int user_b) const {
  if (user_a < 0 || user_a >= num_users_ || user_b < 0 || user_b >= num_users_) {
    throw std::out_of_range("no such user pair");
  }
  return alpha_user_user_[user_a * num_users_ + user_b];
}

ChannelSet ChannelSet::draw(const deploy::NetworkTopology& topology, double alpha_e,
                            const Rng& frame_rng) {
  ChannelSet set;
  set.num_cells_ = topology.num_cells();
  set.num_users_ = static_cast<int>(topology.users.size());

  set.bs_user_.resize(static_cast<std::size_t>(set.num_cells_) * set.num_users_);
  set.alpha_bs_user_.resize(set.bs_user_.size());
  for (int b = 0; b < set.num_cells_; ++b) {
    const auto& bs = topology.cell(b);
    for (int u = 0; u < set.num_users_; ++u) {
      Rng link_rng = frame_rng.derive(kTagBsUser, static_cast<std::uint64_t>(b) << 32 | u);
      const std::size_t idx = static_cast<std::size_t>(b) * set.num_users_ + u;
      set.bs_user_[idx] = draw_fading(bs.antennas, 1, link_rng);
      set.alpha_bs_user_[idx] =
          deploy::link_pathloss(bs.position, topology.users[u].position, alpha_e);
    }
  }

  const std::size_t num_pairs =
      static_cast<std::size_t>(set.num_cells_) * (set.num_cells_ - 1) / 2;
  set.bs_bs_.resize(num_pairs);
  set.alpha_bs_bs_.resize(num_pairs);
  for (int a = 0; a < set.num_cells_; ++a) {
    for (int b = a + 1; b < set.num_cells_; ++b) {
      Rng link_rng = frame_rng.derive(kTagBsBs, static_cast<std::uint64_t>(a) << 32 | b);
      const int idx = set.index_bs_bs(a, b);
      set.bs_bs_[idx] =
          draw_fading(topology.cell(a).antennas, topology.cell(b).antennas, link_rng);
      set.alpha_bs_bs_[idx] =
          deploy::link_pathloss(topology.cell(a).position, topology.cell(b).position, alpha_e);
    }
  }

  set.alpha_user_user_.assign(static_cast<std::size_t>(set.num_users_) * set.num_users_, 0.0);
  for (int u = 0; u < set.num_users_; ++u) {
    for (int v = u + 1; v < set.num_users_; ++v) {
      const double a = deploy::link_pathloss(topology.users[u].position,
                                             topology.users[v].position, alpha_e);
      set.alpha_user_user_[u * set.num_users_ + v] = a;
      set.alpha_user_user_[v * set.num_users_ + u] = a;
    }
  }
  return set;
}

}  // namespace tdsim::channel
