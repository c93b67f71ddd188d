// SPDX-License-Identifier: Apache-2.0
#include "tdsim/tdflex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tdsim::tdflex {

using frame::FrameMatrix;
using frame::SlotMode;

namespace {

void check_counts(const deploy::LoadDistribution& load, int n_data, const char* who) {
  if (load.n_d + load.n_u != n_data || load.n_d < 0 || load.n_u < 0) {
    throw std::invalid_argument(std::string(who) + " slot counts do not sum to n_data");
  }
}

// Writes a data row as one leading block followed by the complement. The
// scheduler owns the full grid state, so the boost plane is written for
// every slot as well (true on the leading boosted_prefix slots).
void fill_sorted(FrameMatrix& fm, int cell, SlotMode first, int first_count, SlotMode rest,
                 int boosted_prefix = 0) {
  for (int c = 1; c <= fm.n_data(); ++c) {
    fm.set_mode(cell, c, c <= first_count ? first : rest);
    fm.set_boost(cell, c, c <= boosted_prefix);
  }
}

}  // namespace

std::optional<int> collisions_pcrd(const deploy::LoadDistribution& macro,
                                   const deploy::LoadDistribution& small, int n_data,
                                   bool b2b_guard) {
  check_counts(macro, n_data, "macro");
  check_counts(small, n_data, "small cell");
  if (b2b_guard && macro.n_d > small.n_d) return std::nullopt;
  return n_data - (std::min(macro.n_d, small.n_d) + std::min(macro.n_u, small.n_u));
}

int collisions_pcru(const deploy::LoadDistribution& macro,
                    const deploy::LoadDistribution& small, int n_data) {
  check_counts(macro, n_data, "macro");
  check_counts(small, n_data, "small cell");
  return n_data - (std::min(macro.n_d, small.n_u) + std::min(macro.n_u, small.n_d));
}

std::string decision_csv(std::span<const CellDecision> decisions) {
  std::string out = "cell_id,c_pcrd,c_pcru,chosen,boosts\n";
  for (const auto& d : decisions) {
    out += std::to_string(d.cell) + ',';
    out += d.c_pcrd ? std::to_string(*d.c_pcrd) : std::string("inf");
    out += ',' + std::to_string(d.c_pcru) + ',';
    out += d.training == SlotMode::SD ? "PCR-D" : "PCR-U";
    out += ',' + std::to_string(d.boosts) + '\n';
  }
  return out;
}

FrameMatrix tdflex_schedule(std::span<const deploy::LoadDistribution> loads,
                            const SchedulerParams& params,
                            std::vector<CellDecision>* decisions) {
  if (loads.empty()) throw std::invalid_argument("loads must cover at least the macro");
  const int n_data = params.n_data;
  FrameMatrix fm(static_cast<int>(loads.size()), n_data);
  if (decisions) decisions->clear();

  const auto& macro = loads[0];
  check_counts(macro, n_data, "macro");
  fm.set_mode(0, 0, SlotMode::SU);
  fill_sorted(fm, 0, SlotMode::D, macro.n_d, SlotMode::U);

  for (int b = 1; b < fm.num_cells(); ++b) {
    const auto& load = loads[b];
    const auto c_pcrd = collisions_pcrd(macro, load, n_data, params.b2b_guard);
    const int c_pcru = collisions_pcru(macro, load, n_data);
    // Ties go to PCR-D: it needs no uplink power enhancement.
    const bool pick_pcrd = c_pcrd.has_value() && *c_pcrd <= c_pcru;

    CellDecision decision;
    decision.cell = b;
    decision.c_pcrd = c_pcrd;
    decision.c_pcru = c_pcru;

    if (pick_pcrd) {
      decision.training = SlotMode::SD;
      fm.set_mode(b, 0, SlotMode::SD);
      fill_sorted(fm, b, SlotMode::D, load.n_d, SlotMode::U);
    } else {
      decision.training = SlotMode::SU;
      fm.set_mode(b, 0, SlotMode::SU);
      // Reverse-TDD slots (macro D over small U) are PCR-U RCR: boost the
      // small cell user's uplink there to ride over the macro's B2B power.
      const int boosted = std::min(load.n_u, macro.n_d);
      fill_sorted(fm, b, SlotMode::U, load.n_u, SlotMode::D, boosted);
      decision.boosts = boosted;
    }
    if (decisions) decisions->push_back(decision);
  }
  return fm;
}

int tdlte_catalog_n_d(double l_d, int n_data) {
  // DL shares of the reference configurations, ascending; ties take the
  // smaller share.
  static constexpr std::array<double, 5> kCatalog = {2.0 / 8, 3.0 / 8, 4.0 / 8, 6.0 / 8,
                                                     7.0 / 8};
  double best = kCatalog[0];
  for (const double frac : kCatalog) {
    if (std::abs(l_d - frac) < std::abs(l_d - best)) best = frac;
  }
  return static_cast<int>(std::lround(best * n_data));
}

std::vector<deploy::LoadDistribution> tdlte_effective_loads(
    std::span<const deploy::LoadDistribution> loads, int n_data) {
  std::vector<deploy::LoadDistribution> effective;
  effective.reserve(loads.size());
  for (const auto& load : loads) {
    deploy::LoadDistribution e;
    e.n_d = tdlte_catalog_n_d(load.l_d, n_data);
    e.n_u = n_data - e.n_d;
    e.l_d = static_cast<double>(e.n_d) / n_data;
    e.l_u = 1.0 - e.l_d;
    effective.push_back(e);
  }
  return effective;
}

FrameMatrix tdlte_schedule(std::span<const deploy::LoadDistribution> loads,
                           const SchedulerParams& params) {
  if (loads.empty()) throw std::invalid_argument("loads must cover at least the macro");
  const int n_data = params.n_data;
  FrameMatrix fm(static_cast<int>(loads.size()), n_data);
  for (int b = 0; b < fm.num_cells(); ++b) {
    check_counts(loads[b], n_data, "cell");
    fm.set_mode(b, 0, SlotMode::SU);
    fill_sorted(fm, b, SlotMode::D, tdlte_catalog_n_d(loads[b].l_d, n_data), SlotMode::U);
  }
  return fm;
}

}  // namespace tdsim::tdflex
