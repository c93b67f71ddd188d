// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "tdsim/training.hpp"

using namespace tdsim;
using namespace tdsim::training;

TEST_SUITE("training") {

TEST_CASE("pilot book is unit-modulus and orthogonal") {
  const PilotBook k1 = make_pilot_book(1);
  CHECK(k1.rows(0, 0) == std::complex<double>(1.0, 0.0));

  for (const int k : {4, 7, 16}) {
    const PilotBook book = make_pilot_book(k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        CHECK(std::abs(std::abs(book.rows(i, j)) - 1.0) < 1e-12);
      }
    }
    // Raw (unnormalized) inner products: K on the diagonal, 0 elsewhere.
    const Eigen::MatrixXcd gram = book.rows * book.rows.adjoint();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double expected = i == j ? static_cast<double>(k) : 0.0;
        CHECK(std::abs(gram(i, j) - expected) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(make_pilot_book(0), std::invalid_argument);
}

TEST_CASE("clean estimate is exactly sqrt(alpha P) h") {
  const auto topo = testing::small_topology(2, 1, 1, 16);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(3));
  const int target = 0;  // macro user, pilot 0
  Rng z(5);
  const auto est = estimate_pcru(topo, ch, target, {}, 0.0, z);
  CHECK(est.provenance.empty());
  const double amp = std::sqrt(ch.alpha_bs_user(0, target) * topo.users[target].ul_power_w);
  const channel::CVec expected = amp * ch.user_link(0, target);
  CHECK(est.vec == expected);
}

TEST_CASE("non-matching pilots contribute exactly zero") {
  const auto topo = testing::small_topology(3, 1, 2, 16);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(4));
  // Macro users are 0,1,2 (pilots 0,1,2); small-cell users are 3,4
  // (pilots 0,1). Target pilot 2 collides with nobody.
  const int target = 2;
  Rng z1(9), z2(9);
  const auto with_candidates = estimate_pcru(topo, ch, target, std::vector<int>{3, 4}, 1e-3, z1);
  const auto without = estimate_pcru(topo, ch, target, {}, 1e-3, z2);
  CHECK(with_candidates.vec == without.vec);  // bit-identical, same z stream
  CHECK(with_candidates.provenance.empty());
}

TEST_CASE("pcru matches the direct right-hand side") {
  const auto topo = testing::small_topology(3, 2, 2, 32);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(6));
  const int target = 0;  // pilot 0; both small cells hold a pilot-0 user
  const std::vector<int> candidates = {3, 4, 5, 6};  // users of both small cells
  Rng z(11);
  const auto est = estimate_pcru(topo, ch, target, candidates, 0.0, z);
  const auto direct = testing::direct_pcru(topo, ch, target, candidates);
  CHECK(testing::max_rel_error(direct, est.vec) < 1e-12);
  REQUIRE(est.provenance.size() == 2);
  for (const auto& p : est.provenance) {
    CHECK(p.kind == ContaminantKind::BsToUser);
    CHECK(topo.users[p.element_id].pilot_index == 0);
    CHECK(p.amplitude ==
          std::sqrt(ch.alpha_bs_user(0, p.element_id) * topo.users[p.element_id].ul_power_w));
  }
}

TEST_CASE("pcrd matches the direct right-hand side") {
  const auto topo = testing::small_topology(3, 2, 2, 32);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(7));
  const int target = 1;  // pilot 1
  const std::vector<int> cells = {1, 2};
  Rng z(12);
  const auto est = estimate_pcrd(topo, ch, target, cells, 0.0, z);
  const auto direct = testing::direct_pcrd(topo, ch, target, cells);
  CHECK(testing::max_rel_error(direct, est.vec) < 1e-12);
  REQUIRE(est.provenance.size() == 2);
  for (const auto& p : est.provenance) {
    CHECK(p.kind == ContaminantKind::BsToBs);
    CHECK(p.amplitude ==
          std::sqrt(ch.alpha_bs_bs(0, p.element_id) * topo.cell(p.element_id).tx_power_w));
  }
}

TEST_CASE("pcrd skips cells without the target pilot") {
  const auto topo = testing::small_topology(3, 1, 1, 16);  // small cell holds pilot 0 only
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(8));
  const int target = 2;  // pilot 2
  Rng z1(13), z2(13);
  const auto est = estimate_pcrd(topo, ch, target, std::vector<int>{1}, 0.0, z1);
  const auto clean = estimate_pcru(topo, ch, target, {}, 0.0, z2);
  CHECK(est.vec == clean.vec);
  CHECK(est.provenance.empty());
}

TEST_CASE("estimate scales linearly in the clean amplitude") {
  auto topo = testing::small_topology(1, 0, 0, 8);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(9));
  Rng z1(1), z2(1);
  const auto base = estimate_pcru(topo, ch, 0, {}, 0.0, z1);
  topo.users[0].ul_power_w *= 4.0;  // sqrt(4 alpha P) = 2 sqrt(alpha P), exactly
  const auto doubled = estimate_pcru(topo, ch, 0, {}, 0.0, z2);
  CHECK(doubled.vec == channel::CVec(2.0 * base.vec));
}

TEST_CASE("training noise has the configured power") {
  const auto topo = testing::small_topology(1, 0, 0, 64);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(10));
  const double noise_w = 0.5;
  Rng z(21);
  double acc = 0.0;
  const int reps = 400;
  for (int i = 0; i < reps; ++i) {
    Rng zi = z.derive(i);
    const auto clean = estimate_pcru(topo, ch, 0, {}, 0.0, zi);
    Rng zj = z.derive(i);
    const auto noisy = estimate_pcru(topo, ch, 0, {}, noise_w, zj);
    acc += (noisy.vec - clean.vec).squaredNorm() / clean.vec.size();
  }
  CHECK(acc / reps == doctest::Approx(noise_w).epsilon(0.05));
}

TEST_CASE("mixed-frame composition lists both contamination kinds") {
  const auto topo = testing::small_topology(2, 2, 1, 16);
  const auto ch = channel::ChannelSet::draw(topo, 3.0, Rng(14));
  Rng z(15);
  const auto est = estimate_contaminated(topo, ch, 0, std::vector<int>{1},
                                         std::vector<int>{2}, 0.0, z);
  REQUIRE(est.provenance.size() == 2);
  CHECK(est.provenance[0].kind == ContaminantKind::BsToUser);
  CHECK(est.provenance[1].kind == ContaminantKind::BsToBs);
}

}  // TEST_SUITE
