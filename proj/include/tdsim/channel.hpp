// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tdsim/deployment.hpp"
#include "tdsim/rng.hpp"

namespace tdsim::channel {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// i.i.d. CN(0,1) entries, drawn row-major so that a matrix with fewer rows
// is an exact prefix of the same stream drawn with more rows. That gives
// bit-shared fading across antenna sweeps run from common seeds.
CMat draw_fading(int rx_antennas, int tx_antennas, Rng& rng);

// Reciprocity is a plain transpose; applying it twice is the identity.
CMat reciprocal(const CMat& h);

// Scales a channel block by the received amplitude sqrt(alpha * power).
CMat link_gain(const CMat& h, double alpha, double power_w);

// All fading blocks and pathloss gains of one frame. Blocks are stored in a
// canonical orientation (into the lower cell index for BS pairs, into the
// base station for BS-user links) and are immutable after draw(); the
// reverse direction is obtained by transposition. User-to-user links carry
// pathloss only, matching how they enter the interference sums.
//
// TODO: optional Rician component on the BS-BS blocks; elevated base
// stations can sit in line of sight of each other, and today that shows up
// only through the power asymmetry.
class ChannelSet {
 public:
  static ChannelSet draw(const deploy::NetworkTopology& topology, double alpha_e,
                         const Rng& frame_rng);

  // Channel from the user's antenna into the antennas of cell `cell`.
  const CVec& user_link(int cell, int user) const;
  // Channel from tx_cell's antennas into rx_cell's antennas.
  CMat bs_link(int rx_cell, int tx_cell) const;

  double alpha_bs_user(int cell, int user) const;
  double alpha_bs_bs(int cell_a, int cell_b) const;
  double alpha_user_user(int user_a, int user_b) const;

  int num_cells() const { return num_cells_; }
  int num_users() const { return num_users_; }

 private:
  ChannelSet() = default;

  int index_bs_user(int cell, int user) const;
  int index_bs_bs(int a, int b) const;  // requires a < b

  int num_cells_ = 0;
  int num_users_ = 0;
  std::vector<CVec> bs_user_;        // [cell * num_users + user]
  std::vector<CMat> bs_bs_;          // upper triangle, oriented into min(a,b)
  std::vector<double> alpha_bs_user_;
  std::vector<double> alpha_bs_bs_;
  std::vector<double> alpha_user_user_;  // full square, diagonal unused
};

}  // namespace tdsim::channel
