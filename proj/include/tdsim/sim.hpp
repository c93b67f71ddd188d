// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tdsim/beamforming.hpp"
#include "tdsim/config.hpp"
#include "tdsim/tdflex.hpp"
#include "tdsim/training.hpp"

namespace tdsim::sim {

enum class Scheduler { Tdflex, Tdlte };
const char* to_string(Scheduler s);

double rate_from_sinr(double sinr);  // log2(1 + sinr), sinr >= 0

struct RateSample {
  int user = 0;
  beam::Direction direction = beam::Direction::Downlink;
  double rate_bps_hz = 0.0;
  int frame = 0;
  Scheduler scheduler = Scheduler::Tdflex;
};

struct FrameParams {
  double noise_w = 0.0;
  double gamma = 1.0;
};

// Per-macro-user estimates of one frame (indexed by user id; empty vectors
// for users not served by the macro). Small-cell estimates are taken as the
// exact channels and need no storage.
struct EstimateSet {
  std::vector<training::ChannelEstimate> macro;
};

// Training slot: composes the macro estimates with the contamination implied
// by the small cells' column-0 modes. z noise streams are derived per user
// from z_rng, so two schedules over the same realization share them.
EstimateSet build_estimates(const deploy::NetworkTopology& topology,
                            const channel::ChannelSet& channels,
                            const frame::FrameMatrix& fm, double noise_w,
                            const Rng& z_rng);

// One frame: validates, trains, then walks the data slots computing the
// SINR of every active link (DL at each served user, UL at each receiving
// base station). Slot t of cell b serves the user with pilot index
// (t-1) mod K_b.
std::vector<beam::SirSample> run_frame(const deploy::NetworkTopology& topology,
                                       const channel::ChannelSet& channels,
                                       const frame::FrameMatrix& fm,
                                       const FrameParams& params, const Rng& z_rng);

struct TwoCellPoint {
  double ratio_db = 0.0;  // contamination ratio: serving / interfering RX power
  double dl_rcr = 0.0;    // linear mean SIRs (mean signal over mean interference)
  double dl_icr = 0.0;
  double ul_rcr = 0.0;
  double ul_icr = 0.0;
};

// Two cells, one user each, shared pilot, PCR-D training, zero noise.
// Sweeps the contamination ratio -20..+20 dB in 5 dB steps and measures the
// data-slot SIR at the small cell's receiving end (DL case) and at the
// serving macro (UL case) under the RCR and ICR slot pairings.
std::vector<TwoCellPoint> run_two_cell(const SimConfig& config);

using SampleKey = std::tuple<Scheduler, beam::Direction, int /*m_antennas*/>;

struct ExperimentResult {
  std::map<SampleKey, std::vector<double>> samples;  // sorted ascending
  std::uint64_t seed = 0;
  std::string config_hash;
  int drops = 0;
};

// Monte-Carlo drops of the two-tier network. TDFLEX and TD-LTE run on
// identical drops, loads, channels and training-noise draws, so paired
// differences isolate the scheduler. Reported populations: DL rates of
// small-cell users, UL rates at the macro.
ExperimentResult run_hetnet(const SimConfig& config, int threads = 1);

// run_hetnet at each antenna count with a common master seed.
ExperimentResult run_antenna_sweep(const SimConfig& config, std::span<const int> m_list,
                                   int threads = 1);

// CSV `scheduler,direction,M,rate_bps_hz,cdf` with a monotone empirical CDF
// per (scheduler, direction, M) group.
void export_cdf(const ExperimentResult& result, const std::filesystem::path& path);

void export_two_cell(std::span<const TwoCellPoint> points,
                     const std::filesystem::path& path);

// Nearest-rank quantile of an ascending-sorted sample, q in [0, 1].
double quantile(std::span<const double> sorted_values, double q);

std::string format_double(double value);

}  // namespace tdsim::sim
