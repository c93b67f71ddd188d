// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tdsim/channel.hpp"

namespace tdsim::training {

// K orthogonal unit-modulus sequences of length K (DFT rows). Row k is the
// pilot shared by the k-th user of every cell; inner products of distinct
// rows vanish to machine precision.
struct PilotBook {
  Eigen::MatrixXcd rows;
  int size() const { return static_cast<int>(rows.rows()); }
};

PilotBook make_pilot_book(int num_pilots);

enum class ContaminantKind { BsToUser, BsToBs };

struct Contaminant {
  int element_id = 0;  // user id for BsToUser, cell index for BsToBs
  ContaminantKind kind = ContaminantKind::BsToUser;
  double amplitude = 0.0;  // sqrt(alpha * power) of the contaminating term
};

// A (possibly contaminated) post-despreading estimate at the serving base
// station, plus the record of what leaked into it.
struct ChannelEstimate {
  channel::CVec vec;
  std::vector<Contaminant> provenance;
};

// Pilot algebra is applied analytically: since the pilot book is exactly
// orthogonal, the estimate is composed directly as
//   h_hat = sqrt(alpha * P) h + sum(contaminating terms) + z,
// and elements whose pilot index differs from the target's contribute
// exactly zero and consume no randomness. z is CN(0, noise_power_w I) and
// is drawn from z_rng only when noise_power_w > 0.

// Contamination by users (of other cells) that transmitted their pilot on
// the uplink. Candidates with a non-matching pilot index are ignored.
ChannelEstimate estimate_pcru(const deploy::NetworkTopology& topology,
                              const channel::ChannelSet& channels, int target_user,
                              std::span<const int> candidate_users, double noise_power_w,
                              Rng& z_rng);

// Contamination by small cells that transmitted pilots on the downlink
// during the macro training slot. A listed cell contributes through its
// B2B channel applied to its unit-norm transmit vector for the user holding
// the target's pilot; cells without such a user are ignored.
ChannelEstimate estimate_pcrd(const deploy::NetworkTopology& topology,
                              const channel::ChannelSet& channels, int target_user,
                              std::span<const int> candidate_cells, double noise_power_w,
                              Rng& z_rng);

// Mixed-frame composition: S_U-trained cells contaminate through their
// matching users, S_D-trained cells through their B2B channels.
ChannelEstimate estimate_contaminated(const deploy::NetworkTopology& topology,
                                      const channel::ChannelSet& channels, int target_user,
                                      std::span<const int> su_cells,
                                      std::span<const int> sd_cells, double noise_power_w,
                                      Rng& z_rng);

}  // namespace tdsim::training
