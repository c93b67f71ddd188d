// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdsim/frame.hpp"

namespace tdsim::tdflex {

struct SchedulerParams {
  int n_data = 8;
  double gamma = 10.0;     // linear uplink power multiplier, >= 1
  bool b2b_guard = true;   // discard PCR-D when it would expose macro->SBS B2B
};

// Collision count if the small cell trains on the downlink (PCR-D):
//   N - [min(n_D^M, n_D^S) + min(n_U^M, n_U^S)].
// Returns nullopt (discard) when n_D^M > n_D^S and the guard is on: a
// macro D slot would then overlap a small-cell U slot, i.e. B2B exposure.
// Throws std::invalid_argument when a cell's slot counts do not sum to
// n_data.
std::optional<int> collisions_pcrd(const deploy::LoadDistribution& macro,
                                   const deploy::LoadDistribution& small, int n_data,
                                   bool b2b_guard = true);

// Collision count if the small cell trains on the uplink (PCR-U):
//   N - [min(n_D^M, n_U^S) + min(n_U^M, n_D^S)].
int collisions_pcru(const deploy::LoadDistribution& macro,
                    const deploy::LoadDistribution& small, int n_data);

struct CellDecision {
  int cell = 0;
  std::optional<int> c_pcrd;  // nullopt when discarded
  int c_pcru = 0;
  frame::SlotMode training = frame::SlotMode::SD;
  int boosts = 0;
};

// CSV rows `cell_id,c_pcrd,c_pcru,chosen,boosts` for the small cells; a
// discarded PCR-D count prints as "inf".
std::string decision_csv(std::span<const CellDecision> decisions);

// The TDFLEX heuristic. Row 0 is the macro: S_U training, then the D block,
// then the U block. Each small cell picks the training path with the lower
// collision count (ties go to PCR-D), sorts its data slots D-first under
// PCR-D and U-first under PCR-U, and under PCR-U flags its reverse-TDD U
// slots (those overlapping macro D slots) for the gamma uplink boost.
// Runs in O(L * n_data).
frame::FrameMatrix tdflex_schedule(std::span<const deploy::LoadDistribution> loads,
                                   const SchedulerParams& params,
                                   std::vector<CellDecision>* decisions = nullptr);

// TD-LTE reference baseline: every cell trains S_U and independently picks
// the closest entry of the DL-fraction catalog {2/8, 3/8, 4/8, 6/8, 7/8}
// (ties to the smaller fraction), slots sorted D-first, no boosts.
frame::FrameMatrix tdlte_schedule(std::span<const deploy::LoadDistribution> loads,
                                  const SchedulerParams& params);

// The catalog DL slot count a cell with load l_d gets at this n_data.
int tdlte_catalog_n_d(double l_d, int n_data);

// The loads TD-LTE actually serves: each cell's requested split snapped to
// its catalog entry. These are what tdlte_schedule's rows satisfy.
std::vector<deploy::LoadDistribution> tdlte_effective_loads(
    std::span<const deploy::LoadDistribution> loads, int n_data);

}  // namespace tdsim::tdflex
