// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "../support/oracles.hpp"
#include "tdsim/tdflex.hpp"

using namespace tdsim;
using namespace tdsim::tdflex;
using deploy::LoadDistribution;
using frame::SlotMode;

namespace {

LoadDistribution counts(int n_d, int n_data) {
  LoadDistribution load;
  load.n_d = n_d;
  load.n_u = n_data - n_d;
  load.l_d = static_cast<double>(n_d) / n_data;
  load.l_u = 1.0 - load.l_d;
  return load;
}

}  // namespace

TEST_SUITE("tdflex") {

TEST_CASE("pcrd collision count and discard rule") {
  CHECK(collisions_pcrd(counts(4, 7), counts(4, 7), 7) == 0);
  CHECK(collisions_pcrd(counts(2, 7), counts(5, 7), 7) == 3);
  CHECK(!collisions_pcrd(counts(5, 7), counts(2, 7), 7).has_value());  // 5 > 2: discard
  CHECK(collisions_pcrd(counts(5, 7), counts(2, 7), 7, false) == 3);
  CHECK_THROWS_AS(collisions_pcrd(LoadDistribution{0.5, 0.5, 3, 3}, counts(2, 7), 7),
                  std::invalid_argument);
}

TEST_CASE("pcru collision count") {
  CHECK(collisions_pcru(counts(5, 7), counts(2, 7), 7) == 0);
  CHECK(collisions_pcru(counts(4, 7), counts(4, 7), 7) == 1);
  for (int n = 1; n <= 8; ++n) {
    CHECK(collisions_pcru(counts(n, n), counts(0, n), n) == 0);  // perfectly crossed
  }
}

TEST_CASE("closed forms equal the enumeration minimum") {
  for (int n_data = 2; n_data <= 6; ++n_data) {
    for (int macro_nd = 0; macro_nd <= n_data; ++macro_nd) {
      for (int small_nd = 0; small_nd <= n_data; ++small_nd) {
        const auto macro = counts(macro_nd, n_data);
        const auto small = counts(small_nd, n_data);
        CHECK(*collisions_pcrd(macro, small, n_data, false) ==
              testing::min_icr_over_orderings(n_data, macro_nd, small_nd, SlotMode::SD));
        CHECK(collisions_pcru(macro, small, n_data) ==
              testing::min_icr_over_orderings(n_data, macro_nd, small_nd, SlotMode::SU));
      }
    }
  }
}

TEST_CASE("matched loads choose PCR-D with zero collisions and no boosts") {
  const std::vector<LoadDistribution> loads(4, deploy::make_load(0.5, 8));
  SchedulerParams params;
  std::vector<CellDecision> decisions;
  const auto fm = tdflex_schedule(loads, params, &decisions);
  CHECK(frame::validate(fm, loads).empty());
  for (const auto& d : decisions) {
    CHECK(d.training == SlotMode::SD);
    CHECK(d.c_pcrd == 0);
    CHECK(d.boosts == 0);
  }
  for (int b = 1; b < fm.num_cells(); ++b) {
    CHECK(frame::count_icr_collisions(fm.data_row(0), fm.data_row(b), fm.mode(b, 0)) == 0);
  }
}

TEST_CASE("discarded PCR-D flips to PCR-U with boosted reverse-TDD slots") {
  const std::vector<LoadDistribution> loads = {deploy::make_load(0.75, 8),
                                               deploy::make_load(0.25, 8)};
  SchedulerParams params;
  std::vector<CellDecision> decisions;
  const auto fm = tdflex_schedule(loads, params, &decisions);
  REQUIRE(decisions.size() == 1);
  CHECK(!decisions[0].c_pcrd.has_value());  // 6 > 2 exposes B2B
  CHECK(decisions[0].c_pcru == 0);
  CHECK(decisions[0].training == SlotMode::SU);
  CHECK(fm.mode(1, 0) == SlotMode::SU);
  // U-block first; the six U slots all overlap the macro's D block.
  CHECK(decisions[0].boosts == 6);
  for (int c = 1; c <= 6; ++c) {
    CHECK(fm.mode(1, c) == SlotMode::U);
    CHECK(fm.boosted(1, c));
  }
  for (int c = 7; c <= 8; ++c) {
    CHECK(fm.mode(1, c) == SlotMode::D);
    CHECK(!fm.boosted(1, c));
  }
  CHECK(frame::count_icr_collisions(fm.data_row(0), fm.data_row(1), SlotMode::SU) == 0);
}

TEST_CASE("emitted frames attain the chosen collision count") {
  SchedulerParams params;
  for (int n_data = 2; n_data <= 8; ++n_data) {
    params.n_data = n_data;
    for (int macro_nd = 0; macro_nd <= n_data; ++macro_nd) {
      for (int small_nd = 0; small_nd <= n_data; ++small_nd) {
        const std::vector<LoadDistribution> loads = {counts(macro_nd, n_data),
                                                     counts(small_nd, n_data)};
        std::vector<CellDecision> decisions;
        const auto fm = tdflex_schedule(loads, params, &decisions);
        CHECK(frame::validate(fm, loads).empty());
        const int attained =
            frame::count_icr_collisions(fm.data_row(0), fm.data_row(1), fm.mode(1, 0));
        const int predicted = decisions[0].training == SlotMode::SD ? *decisions[0].c_pcrd
                                                                    : decisions[0].c_pcru;
        CHECK(attained == predicted);
      }
    }
  }
}

TEST_CASE("random loads always yield valid frames with the predicted collisions") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const int n_data = 1 + static_cast<int>(rng.next_u64() % 10);
    const int cells = 1 + static_cast<int>(rng.next_u64() % 7);
    SchedulerParams params;
    params.n_data = n_data;
    std::vector<LoadDistribution> loads;
    for (int b = 0; b < cells; ++b) loads.push_back(deploy::draw_load(n_data, rng));

    std::vector<CellDecision> decisions;
    const auto flex = tdflex_schedule(loads, params, &decisions);
    CHECK(frame::validate(flex, loads).empty());
    for (const auto& d : decisions) {
      const int attained = frame::count_icr_collisions(flex.data_row(0),
                                                       flex.data_row(d.cell),
                                                       flex.mode(d.cell, 0));
      CHECK(attained == (d.training == SlotMode::SD ? *d.c_pcrd : d.c_pcru));
    }

    const auto lte = tdlte_schedule(loads, params);
    CHECK(frame::validate(lte, tdlte_effective_loads(loads, n_data)).empty());
  }
}

TEST_CASE("ties prefer PCR-D") {
  // macro (2,2), small (2,2) at N=4: C_pcrd = 0 = min, stays PCR-D; craft a
  // genuine tie instead: macro (3,1), small (2,2): C_pcrd discards (3>2)...
  // use guard off via loads where both equal: macro (2,2), small (3,1):
  // C_pcrd = 4 - (2+1) = 1, C_pcru = 4 - (min(2,1)+min(2,3)) = 1. Tie.
  const std::vector<LoadDistribution> loads = {counts(2, 4), counts(3, 4)};
  SchedulerParams params;
  params.n_data = 4;
  std::vector<CellDecision> decisions;
  tdflex_schedule(loads, params, &decisions);
  REQUIRE(decisions[0].c_pcrd.has_value());
  CHECK(*decisions[0].c_pcrd == decisions[0].c_pcru);
  CHECK(decisions[0].training == SlotMode::SD);
  CHECK(decisions[0].boosts == 0);
}

TEST_CASE("decision log serializes discards as inf") {
  std::vector<CellDecision> decisions(2);
  decisions[0] = {1, 2, 3, SlotMode::SD, 0};
  decisions[1] = {2, std::nullopt, 1, SlotMode::SU, 4};
  CHECK(decision_csv(decisions) ==
        "cell_id,c_pcrd,c_pcru,chosen,boosts\n"
        "1,2,3,PCR-D,0\n"
        "2,inf,1,PCR-U,4\n");
}

TEST_CASE("tdlte catalog selection") {
  CHECK(tdlte_catalog_n_d(0.5, 8) == 4);
  CHECK(tdlte_catalog_n_d(1.0, 8) == 7);   // no all-D entry
  CHECK(tdlte_catalog_n_d(0.0, 8) == 2);   // no all-U entry
  CHECK(tdlte_catalog_n_d(0.625, 8) == 4); // tie between 4/8 and 6/8: smaller
  CHECK(tdlte_catalog_n_d(0.4375, 8) == 3);  // tie between 3/8 and 4/8: smaller
}

TEST_CASE("tdlte frames are uniform S_U, D-first, unboosted") {
  const std::vector<LoadDistribution> loads = {deploy::make_load(0.9, 8),
                                               deploy::make_load(0.9, 8),
                                               deploy::make_load(0.1, 8)};
  SchedulerParams params;
  const auto fm = tdlte_schedule(loads, params);
  const auto effective = tdlte_effective_loads(loads, 8);
  CHECK(frame::validate(fm, effective).empty());
  for (int b = 0; b < fm.num_cells(); ++b) {
    CHECK(fm.mode(b, 0) == SlotMode::SU);
    for (int c = 1; c <= 8; ++c) CHECK(!fm.boosted(b, c));
  }
  // Identical loads give identical rows.
  for (int c = 0; c <= 8; ++c) CHECK(fm.mode(0, c) == fm.mode(1, c));
  // D block leads.
  CHECK(fm.mode(0, 1) == SlotMode::D);
  CHECK(effective[0].n_d == 7);
  CHECK(effective[2].n_d == 2);
}

}  // TEST_SUITE
