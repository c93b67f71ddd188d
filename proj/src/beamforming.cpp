// SPDX-License-Identifier: Apache-2.0
#include "tdsim/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace tdsim::beam {

using channel::CVec;

const char* to_string(Direction dir) {
  return dir == Direction::Downlink ? "DL" : "UL";
}

double SirSample::db() const { return 10.0 * std::log10(value); }

CVec mrt_precoder(const CVec& estimate) {
  const double norm = estimate.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("mrt_precoder: degenerate zero estimate");
  return estimate.conjugate() / norm;
}

std::complex<double> mrc_combine(const CVec& estimate, const CVec& received) {
  const double norm = estimate.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("mrc_combine: degenerate zero estimate");
  if (estimate.size() != received.size()) {
    throw std::invalid_argument("mrc_combine: dimension mismatch");
  }
  return estimate.dot(received) / norm;  // Eigen dot conjugates the left side
}

namespace {

double ue_power_w(const deploy::NetworkTopology& topo, const UlTransmitter& tx, double gamma) {
  return topo.users[tx.user].ul_power_w * (tx.boosted ? gamma : 1.0);
}

}  // namespace

SirSample downlink_sinr(const deploy::NetworkTopology& topology,
                        const channel::ChannelSet& channels, int target_user,
                        int serving_cell, const SlotActivity& activity,
                        double noise_power_w, double gamma, int slot) {
  const DlTransmitter* serving = nullptr;
  for (const auto& tx : activity.dl) {
    if (tx.cell == serving_cell && tx.served_user == target_user) serving = &tx;
  }
  if (serving == nullptr) {
    throw std::logic_error("downlink_sinr: serving cell is not transmitting to the target");
  }

  // Reception of weight w through the transpose-reciprocal downlink channel:
  // amplitude h^T w.
  const auto rx_power = [&](const DlTransmitter& tx) {
    const std::complex<double> amp =
        channels.user_link(tx.cell, target_user).transpose() * (*tx.precoder);
    return topology.cell(tx.cell).tx_power_w *
           channels.alpha_bs_user(tx.cell, target_user) * std::norm(amp);
  };

  const double signal = rx_power(*serving);
  double interference = noise_power_w;
  for (const auto& tx : activity.dl) {
    if (&tx == serving) continue;
    interference += rx_power(tx);
  }
  for (const auto& tx : activity.ul) {
    interference +=
        ue_power_w(topology, tx, gamma) * channels.alpha_user_user(tx.user, target_user);
  }

  return SirSample{signal / interference, Direction::Downlink, target_user, slot, {},
                   target_user};
}

SirSample uplink_sinr(const deploy::NetworkTopology& topology,
                      const channel::ChannelSet& channels, int serving_cell,
                      int target_user, const CVec& combiner, const SlotActivity& activity,
                      double noise_power_w, double gamma, int slot) {
  const UlTransmitter* desired = nullptr;
  for (const auto& tx : activity.ul) {
    if (tx.cell == serving_cell && tx.user == target_user) desired = &tx;
  }
  if (desired == nullptr) {
    throw std::logic_error("uplink_sinr: serving cell is not receiving the target user");
  }
  const double combiner_norm2 = combiner.squaredNorm();
  if (!(combiner_norm2 > 0.0)) {
    throw std::invalid_argument("uplink_sinr: degenerate zero combiner");
  }

  const auto user_pickup = [&](const UlTransmitter& tx) {
    const std::complex<double> amp = combiner.dot(channels.user_link(serving_cell, tx.user));
    return ue_power_w(topology, tx, gamma) *
           channels.alpha_bs_user(serving_cell, tx.user) * std::norm(amp);
  };

  const double signal = user_pickup(*desired);
  double interference = noise_power_w * combiner_norm2;
  for (const auto& tx : activity.ul) {
    if (&tx == desired) continue;
    interference += user_pickup(tx);
  }
  for (const auto& tx : activity.dl) {
    if (tx.cell == serving_cell) continue;
    const CVec arriving = channels.bs_link(serving_cell, tx.cell) * (*tx.precoder);
    interference += topology.cell(tx.cell).tx_power_w *
                    channels.alpha_bs_bs(serving_cell, tx.cell) *
                    std::norm(combiner.dot(arriving));
  }

  return SirSample{signal / interference, Direction::Uplink, serving_cell, slot, {},
                   target_user};
}

}  // namespace tdsim::beam
