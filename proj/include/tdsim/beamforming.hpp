// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "tdsim/channel.hpp"
#include "tdsim/frame.hpp"

namespace tdsim::beam {

enum class Direction { Downlink, Uplink };

const char* to_string(Direction dir);

struct SirSample {
  double value = 0.0;  // linear SINR (pure SIR when the noise term is zero)
  Direction direction = Direction::Downlink;
  int element_id = 0;  // measured at: user id for DL, receiving cell index for UL
  int slot = 0;
  std::optional<frame::RegimeLabel> regime;
  int subject_user = -1;  // the user whose link is measured
  double db() const;
};

// MRT weight: the normalized conjugate of the estimate, so that reception
// through the transpose-reciprocal downlink channel is matched filtering,
// |h^T w| = |h^H h_hat| / ||h_hat||. Unit norm; throws on a zero estimate.
channel::CVec mrt_precoder(const channel::CVec& estimate);

// Matched-filter combining: inner(estimate, received) / ||estimate||.
std::complex<double> mrc_combine(const channel::CVec& estimate,
                                 const channel::CVec& received);

// A base station transmitting downlink in the slot, with the weight it uses
// for its served user, and a user transmitting uplink.
struct DlTransmitter {
  int cell = 0;
  int served_user = 0;
  const channel::CVec* precoder = nullptr;
};

struct UlTransmitter {
  int cell = 0;
  int user = 0;
  bool boosted = false;
};

struct SlotActivity {
  std::vector<DlTransmitter> dl;
  std::vector<UlTransmitter> ul;
};

// SINR at target_user served by serving_cell in a D slot:
//   P_s a_s |h^T w_s|^2 over
//   sum_{b' != s in D} P_b' a_b' |h^T w_b'|^2
//   + sum_{uplink users} P_eff a_uu + noise.
// Uplink transmitters enter with their boosted power where flagged. Throws
// std::logic_error when the serving cell is not transmitting to the target
// in this slot.
SirSample downlink_sinr(const deploy::NetworkTopology& topology,
                        const channel::ChannelSet& channels, int target_user,
                        int serving_cell, const SlotActivity& activity,
                        double noise_power_w, double gamma, int slot);

// Post-MRC SINR at serving_cell receiving target_user in a U slot, combining
// with `combiner` (the serving estimate):
//   P_eff a |c^H h|^2 over
//   sum_{other ul users} P_eff' a' |c^H h'|^2
//   + sum_{co-slot DL cells} P_b a_b2b |c^H (H w_b)|^2
//   + noise ||c||^2.
SirSample uplink_sinr(const deploy::NetworkTopology& topology,
                      const channel::ChannelSet& channels, int serving_cell,
                      int target_user, const channel::CVec& combiner,
                      const SlotActivity& activity, double noise_power_w, double gamma,
                      int slot);

}  // namespace tdsim::beam
