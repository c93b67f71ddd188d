// SPDX-License-Identifier: Apache-2.0
#include "tdsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace tdsim::sim {

using beam::Direction;
using beam::SirSample;
using channel::ChannelSet;
using channel::CVec;
using deploy::LoadDistribution;
using deploy::NetworkTopology;
using frame::FrameMatrix;
using frame::SlotMode;

namespace {

// Substream tags off the master seed; every draw in an experiment hangs off
// one of these so drops can run in parallel and reruns are bit-identical.
constexpr std::uint64_t kTagDrop = 100;
constexpr std::uint64_t kTagTopology = 1;
constexpr std::uint64_t kTagLoads = 2;
constexpr std::uint64_t kTagChannels = 3;
constexpr std::uint64_t kTagTrainingNoise = 4;
constexpr std::uint64_t kTagTwoCell = 200;

}  // namespace

const char* to_string(Scheduler s) { return s == Scheduler::Tdflex ? "TDFLEX" : "TDLTE"; }

double rate_from_sinr(double sinr) {
  if (sinr < 0.0) throw std::domain_error("rate_from_sinr requires sinr >= 0");
  return std::log2(1.0 + sinr);
}

EstimateSet build_estimates(const NetworkTopology& topology, const ChannelSet& channels,
                            const FrameMatrix& fm, double noise_w, const Rng& z_rng) {
  if (static_cast<int>(topology.users_of_cell.size()) != topology.num_cells()) {
    throw std::invalid_argument("topology is missing its pilot assignment");
  }
  EstimateSet set;
  set.macro.resize(topology.users.size());

  std::vector<int> su_cells;
  std::vector<int> sd_cells;
  for (int b = 1; b < fm.num_cells(); ++b) {
    if (topology.users_of_cell[b].empty()) continue;  // silent cell, no pilots
    (fm.mode(b, 0) == SlotMode::SU ? su_cells : sd_cells).push_back(b);
  }

  for (const int user : topology.users_of_cell[0]) {
    Rng user_rng = z_rng.derive(static_cast<std::uint64_t>(user));
    set.macro[user] = training::estimate_contaminated(topology, channels, user, su_cells,
                                                      sd_cells, noise_w, user_rng);
  }
  return set;
}

namespace {

void check_frame_structure(const NetworkTopology& topology, const FrameMatrix& fm) {
  if (fm.num_cells() != topology.num_cells()) {
    throw std::invalid_argument("frame rows do not match the topology");
  }
  if (fm.mode(0, 0) != SlotMode::SU) {
    throw std::invalid_argument("macro must train in S_U");
  }
  for (int b = 0; b < fm.num_cells(); ++b) {
    const SlotMode training = fm.mode(b, 0);
    if (training != SlotMode::SU && training != SlotMode::SD) {
      throw std::invalid_argument("training column must be S_U or S_D");
    }
    for (int c = 1; c <= fm.n_data(); ++c) {
      const SlotMode m = fm.mode(b, c);
      if (m != SlotMode::U && m != SlotMode::D) {
        throw std::invalid_argument("data columns must be U or D");
      }
      if (fm.boosted(b, c) && (b == 0 || m != SlotMode::U)) {
        throw std::invalid_argument("boost flags only belong on small-cell U slots");
      }
    }
  }
}

}  // namespace

std::vector<SirSample> run_frame(const NetworkTopology& topology, const ChannelSet& channels,
                                 const FrameMatrix& fm, const FrameParams& params,
                                 const Rng& z_rng) {
  check_frame_structure(topology, fm);

  const EstimateSet estimates = build_estimates(topology, channels, fm, params.noise_w, z_rng);

  // Transmit weight per user: the macro beams on its (possibly contaminated)
  // estimate, small cells on their exact serving channel.
  std::vector<CVec> precoders(topology.users.size());
  for (const auto& user : topology.users) {
    if (user.serving_cell == 0) {
      precoders[user.id] = beam::mrt_precoder(estimates.macro[user.id].vec);
    } else {
      precoders[user.id] = beam::mrt_precoder(channels.user_link(user.serving_cell, user.id));
    }
  }

  std::vector<SirSample> samples;
  // Per-direction round robin: cell b's i-th slot of a direction serves its
  // user with pilot index (i-1) mod K_b, so every cell's early D and early U
  // slots carry its low pilot indices.
  std::vector<int> d_seen(fm.num_cells(), 0);
  std::vector<int> u_seen(fm.num_cells(), 0);
  for (int t = 1; t <= fm.n_data(); ++t) {
    beam::SlotActivity activity;
    for (int b = 0; b < fm.num_cells(); ++b) {
      const bool is_dl = fm.mode(b, t) == SlotMode::D;
      int& ordinal = is_dl ? d_seen[b] : u_seen[b];
      const int turn = ordinal++;
      const auto& cell_users = topology.users_of_cell[b];
      if (cell_users.empty()) continue;
      const int user = cell_users[turn % cell_users.size()];
      if (is_dl) {
        activity.dl.push_back({b, user, &precoders[user]});
      } else {
        activity.ul.push_back({b, user, fm.boosted(b, t)});
      }
    }

    const auto pair_regime = [&](int cell) -> std::optional<frame::RegimeLabel> {
      if (cell == 0) return std::nullopt;
      return frame::classify_regime(fm.mode(cell, 0), fm.mode(0, t), fm.mode(cell, t));
    };

    for (const auto& tx : activity.dl) {
      SirSample s = beam::downlink_sinr(topology, channels, tx.served_user, tx.cell, activity,
                                        params.noise_w, params.gamma, t);
      s.regime = pair_regime(tx.cell);
      samples.push_back(std::move(s));
    }
    for (const auto& tx : activity.ul) {
      const CVec& combiner = tx.cell == 0 ? estimates.macro[tx.user].vec
                                          : channels.user_link(tx.cell, tx.user);
      SirSample s = beam::uplink_sinr(topology, channels, tx.cell, tx.user, combiner,
                                      activity, params.noise_w, params.gamma, t);
      s.regime = pair_regime(tx.cell);
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

std::vector<TwoCellPoint> run_two_cell(const SimConfig& config) {
  // Controlled pair: a massive-MIMO serving cell and one interfering small
  // cell, one user each, shared pilot, PCR-D training, zero noise. Fixed
  // link budget except for the swept interfering path; the small cell's
  // user sits next to its base station, so macro-to-small-cell and
  // macro-to-small-user links share the swept gain.
  const int m = config.m_antennas;
  const int a_s = config.sbs_antennas;
  const double p_m = config.p_mbs_w;
  const double p_s = config.p_sbs_w;
  const double p_u = config.p_ue_w;
  const double alpha_mu = std::pow(200.0, -config.alpha_e);  // macro user at 200 m
  const double alpha_su = std::pow(20.0, -config.alpha_e);   // small user at 20 m

  const Rng master(config.seed);
  std::vector<TwoCellPoint> points;
  int point_index = 0;
  for (int ratio_db = -20; ratio_db <= 20; ratio_db += 5, ++point_index) {
    const double ratio = db_to_linear(ratio_db);
    // Contamination ratio = serving / interfering RX power during training.
    const double alpha_b2b = alpha_mu * p_u / (ratio * p_s);

    double s_dl_rcr = 0, i_dl_rcr = 0, s_dl_icr = 0, i_dl_icr = 0;
    double s_ul = 0, i_ul_rcr = 0, i_ul_icr = 0;

    for (int draw = 0; draw < config.two_cell_draws; ++draw) {
      Rng rng = master.derive(kTagTwoCell, static_cast<std::uint64_t>(point_index), draw);
      Rng r1 = rng.derive(1), r2 = rng.derive(2), r3 = rng.derive(3), r4 = rng.derive(4);
      const CVec h_mu = channel::draw_fading(m, 1, r1);      // macro <-> its user
      const auto g_b2b = channel::draw_fading(m, a_s, r2);   // macro <-> small cell
      const CVec h_su = channel::draw_fading(a_s, 1, r3);    // small cell <-> its user
      const CVec h_msu = channel::draw_fading(m, 1, r4);     // macro <-> small user

      const CVec w_small = beam::mrt_precoder(h_su);
      // PCR-D training: the small cell sent the shared pilot downlink, so
      // the macro's estimate carries the effective B2B vector.
      const CVec estimate = std::sqrt(alpha_mu * p_u) * h_mu +
                            std::sqrt(alpha_b2b * p_s) * (g_b2b * w_small);
      const CVec w_macro = beam::mrt_precoder(estimate);
      const double est_norm2 = estimate.squaredNorm();
      const double su_norm2 = h_su.squaredNorm();

      // Downlink data at the macro (serving D). RCR: the small cell also
      // transmits; measure its listening user. ICR: the small cell receives
      // uplink; measure its base station under the beamed B2B hit.
      s_dl_rcr += p_s * alpha_su * su_norm2;
      i_dl_rcr += p_m * alpha_b2b * std::norm((h_msu.transpose() * w_macro)(0));
      s_dl_icr += p_u * alpha_su * su_norm2;
      i_dl_icr += p_m * alpha_b2b *
                  std::norm(h_su.dot(channel::reciprocal(g_b2b) * w_macro)) / su_norm2;

      // Uplink data at the macro (serving U), combining with the
      // contaminated estimate. RCR: the small user transmits. ICR: the
      // small cell transmits through the weight the estimate is matched to.
      s_ul += p_u * alpha_mu * std::norm(estimate.dot(h_mu)) / est_norm2;
      i_ul_rcr += p_u * alpha_b2b * std::norm(estimate.dot(h_msu)) / est_norm2;
      i_ul_icr += p_s * alpha_b2b * std::norm(estimate.dot(g_b2b * w_small)) / est_norm2;
    }

    TwoCellPoint point;
    point.ratio_db = ratio_db;
    point.dl_rcr = s_dl_rcr / i_dl_rcr;
    point.dl_icr = s_dl_icr / i_dl_icr;
    point.ul_rcr = s_ul / i_ul_rcr;
    point.ul_icr = s_ul / i_ul_icr;
    points.push_back(point);
  }
  return points;
}

namespace {

struct DropResult {
  std::vector<RateSample> rates;
};

DropResult run_drop(const SimConfig& config, const Rng& master, int drop) {
  DropResult out;
  const Rng drop_rng = master.derive(kTagDrop, static_cast<std::uint64_t>(drop));
  Rng topo_rng = drop_rng.derive(kTagTopology);
  const NetworkTopology topo = deploy::make_topology(config, topo_rng);

  tdflex::SchedulerParams params;
  params.n_data = config.n_data;
  params.gamma = config.gamma_lin;
  const FrameParams frame_params{config.noise_w, config.gamma_lin};

  for (int f = 0; f < config.frames; ++f) {
    Rng load_rng = drop_rng.derive(kTagLoads, static_cast<std::uint64_t>(f));
    const auto loads = deploy::draw_loads(topo.num_cells(), config.n_data, load_rng);
    const Rng chan_rng = drop_rng.derive(kTagChannels, static_cast<std::uint64_t>(f));
    const ChannelSet channels = ChannelSet::draw(topo, config.alpha_e, chan_rng);
    const Rng z_rng = drop_rng.derive(kTagTrainingNoise, static_cast<std::uint64_t>(f));

    for (const Scheduler sched : {Scheduler::Tdflex, Scheduler::Tdlte}) {
      const FrameMatrix fm = sched == Scheduler::Tdflex
                                 ? tdflex::tdflex_schedule(loads, params)
                                 : tdflex::tdlte_schedule(loads, params);
      const auto samples = run_frame(topo, channels, fm, frame_params, z_rng);
      for (const auto& s : samples) {
        // Reported populations: downlink of small-cell users, uplink at the
        // macro. Everything else is simulated for its interference only.
        const bool report =
            s.direction == Direction::Downlink
                ? topo.users[s.element_id].serving_cell != 0
                : s.element_id == 0;
        if (!report) continue;
        out.rates.push_back({s.subject_user, s.direction, rate_from_sinr(s.value), f, sched});
      }
    }
  }
  return out;
}

}  // namespace

ExperimentResult run_hetnet(const SimConfig& config, int threads) {
  const Rng master(config.seed);
  std::vector<DropResult> per_drop(config.drops);

  const int workers = std::max(1, std::min(threads, config.drops));
  if (workers == 1) {
    for (int d = 0; d < config.drops; ++d) per_drop[d] = run_drop(config, master, d);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int d = w; d < config.drops; d += workers) {
          per_drop[d] = run_drop(config, master, d);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  ExperimentResult result;
  result.seed = config.seed;
  result.config_hash = config_hash(config);
  result.drops = config.drops;
  for (const auto& drop : per_drop) {
    for (const auto& r : drop.rates) {
      result.samples[{r.scheduler, r.direction, config.m_antennas}].push_back(r.rate_bps_hz);
    }
  }
  for (auto& [key, values] : result.samples) std::sort(values.begin(), values.end());
  return result;
}

ExperimentResult run_antenna_sweep(const SimConfig& config, std::span<const int> m_list,
                                   int threads) {
  ExperimentResult merged;
  merged.seed = config.seed;
  merged.config_hash = config_hash(config);
  merged.drops = config.drops;
  for (const int m : m_list) {
    SimConfig sweep_config = config;
    sweep_config.m_antennas = m;
    ExperimentResult part = run_hetnet(sweep_config, threads);
    for (auto& [key, values] : part.samples) merged.samples[key] = std::move(values);
  }
  return merged;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void export_cdf(const ExperimentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << "scheduler,direction,M,rate_bps_hz,cdf\n";
  for (const auto& [key, values] : result.samples) {
    const auto& [sched, dir, m] = key;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
      out << to_string(sched) << ',' << beam::to_string(dir) << ',' << m << ','
          << format_double(values[i]) << ','
          << format_double(static_cast<double>(i + 1) / static_cast<double>(n)) << '\n';
    }
  }
}

void export_two_cell(std::span<const TwoCellPoint> points,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << "ratio_db,dl_rcr_sir_db,dl_icr_sir_db,ul_rcr_sir_db,ul_icr_sir_db\n";
  const auto db = [](double v) { return 10.0 * std::log10(v); };
  for (const auto& p : points) {
    out << format_double(p.ratio_db) << ',' << format_double(db(p.dl_rcr)) << ','
        << format_double(db(p.dl_icr)) << ',' << format_double(db(p.ul_rcr)) << ','
        << format_double(db(p.ul_icr)) << '\n';
  }
}

double quantile(std::span<const double> sorted_values, double q) {
  if (sorted_values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile order must be in [0, 1]");
  const auto idx = static_cast<std::size_t>(
      std::lround(q * static_cast<double>(sorted_values.size() - 1)));
  return sorted_values[idx];
}

}  // namespace tdsim::sim
