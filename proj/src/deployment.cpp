// SPDX-License-Identifier: Apache-2.0
#include "tdsim/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdsim/config.hpp"

namespace tdsim::deploy {

double distance_m(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

int NetworkTopology::pilot_len() const {
  int k = 0;
  for (const auto& cell_users : users_of_cell) {
    k = std::max(k, static_cast<int>(cell_users.size()));
  }
  if (k == 0) {
    // Manually built topologies may carry pilot indices without the cache.
    for (const auto& u : users) k = std::max(k, u.pilot_index + 1);
  }
  return k;
}

std::vector<Point2D> sample_ppp(double density_per_km2, double area_km2, Rng& rng) {
  if (density_per_km2 < 0.0) throw std::invalid_argument("PPP density must be >= 0");
  if (area_km2 <= 0.0) throw std::invalid_argument("PPP area must be > 0");
  const int count = rng.next_poisson(density_per_km2 * area_km2);
  const double side_m = std::sqrt(area_km2) * 1000.0;
  std::vector<Point2D> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = (rng.next_double() - 0.5) * side_m;
    const double y = (rng.next_double() - 0.5) * side_m;
    points.push_back({x, y});
  }
  return points;
}

double pathloss(double distance_m, double exponent) {
  if (!(distance_m > 0.0)) throw std::domain_error("pathloss requires distance > 0");
  return std::pow(distance_m, -exponent);
}

double link_pathloss(const Point2D& a, const Point2D& b, double exponent) {
  return pathloss(std::max(distance_m(a, b), kMinLinkDistanceM), exponent);
}

std::vector<int> associate(std::span<const User> users, const BaseStation& macro,
                           std::span<const BaseStation> smalls, double alpha_e) {
  std::vector<int> serving(users.size(), 0);
  for (std::size_t i = 0; i < users.size(); ++i) {
    double best = macro.tx_power_w * link_pathloss(macro.position, users[i].position, alpha_e);
    int best_cell = 0;
    for (const auto& sbs : smalls) {
      const double rx = sbs.tx_power_w * link_pathloss(sbs.position, users[i].position, alpha_e);
      if (rx > best) {
        best = rx;
        best_cell = sbs.id;
      }
    }
    serving[i] = best_cell;
  }
  return serving;
}

void assign_pilots(NetworkTopology& topology) {
  topology.users_of_cell.assign(topology.num_cells(), {});
  for (const auto& user : topology.users) {
    if (user.serving_cell < 0 || user.serving_cell >= topology.num_cells()) {
      throw std::logic_error("assign_pilots requires a computed association");
    }
    topology.users_of_cell[user.serving_cell].push_back(user.id);
  }
  for (auto& cell_users : topology.users_of_cell) {
    std::sort(cell_users.begin(), cell_users.end());
    for (std::size_t k = 0; k < cell_users.size(); ++k) {
      topology.users[cell_users[k]].pilot_index = static_cast<int>(k);
    }
  }
}

LoadDistribution make_load(double l_d, int n_data) {
  if (n_data < 1) throw std::invalid_argument("n_data must be >= 1");
  if (l_d < 0.0 || l_d > 1.0) throw std::invalid_argument("l_d must be in [0, 1]");
  LoadDistribution load;
  load.l_d = l_d;
  load.l_u = 1.0 - l_d;
  load.n_d = static_cast<int>(std::lround(n_data * l_d));  // half away from zero
  load.n_u = n_data - load.n_d;
  return load;
}

LoadDistribution draw_load(int n_data, Rng& rng) { return make_load(rng.next_double(), n_data); }

std::vector<LoadDistribution> draw_loads(int num_cells, int n_data, Rng& rng) {
  std::vector<LoadDistribution> loads;
  loads.reserve(num_cells);
  for (int b = 0; b < num_cells; ++b) loads.push_back(draw_load(n_data, rng));
  return loads;
}

NetworkTopology make_topology(const SimConfig& config, Rng& rng) {
  NetworkTopology topo;
  topo.area_m2 = config.area_m2;
  topo.macro = BaseStation{0, Tier::Macro, {0.0, 0.0}, config.m_antennas, config.p_mbs_w};

  Rng sbs_rng = rng.derive(1);
  Rng user_rng = rng.derive(2);
  const auto sbs_points = sample_ppp(config.lambda_sc, config.area_km2, sbs_rng);
  const auto user_points = sample_ppp(config.lambda_u, config.area_km2, user_rng);

  topo.smalls.reserve(sbs_points.size());
  for (std::size_t i = 0; i < sbs_points.size(); ++i) {
    topo.smalls.push_back(BaseStation{static_cast<int>(i) + 1, Tier::Small, sbs_points[i],
                                      config.sbs_antennas, config.p_sbs_w});
  }
  topo.users.reserve(user_points.size());
  for (std::size_t i = 0; i < user_points.size(); ++i) {
    topo.users.push_back(User{static_cast<int>(i), user_points[i], -1, -1, config.p_ue_w});
  }

  const auto serving = associate(topo.users, topo.macro, topo.smalls, config.alpha_e);
  for (std::size_t i = 0; i < topo.users.size(); ++i) topo.users[i].serving_cell = serving[i];
  assign_pilots(topo);
  return topo;
}

}  // namespace tdsim::deploy
