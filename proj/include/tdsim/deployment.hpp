// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tdsim/rng.hpp"

namespace tdsim {

struct SimConfig;

namespace deploy {

// Links shorter than this are clamped before evaluating the pathloss law,
// which otherwise diverges as d -> 0.
inline constexpr double kMinLinkDistanceM = 1.0;

struct Point2D {
  double x_m = 0.0;
  double y_m = 0.0;
};

double distance_m(const Point2D& a, const Point2D& b);

enum class Tier { Macro, Small };

struct BaseStation {
  int id = 0;  // equals the cell index; 0 is always the macro
  Tier tier = Tier::Macro;
  Point2D position;
  int antennas = 1;
  double tx_power_w = 1.0;
};

struct User {
  int id = 0;
  Point2D position;
  int serving_cell = -1;
  int pilot_index = -1;
  double ul_power_w = 1.0;
};

struct NetworkTopology {
  BaseStation macro;
  std::vector<BaseStation> smalls;
  std::vector<User> users;
  double area_m2 = 0.0;
  // Users of each cell ordered by pilot index; filled by assign_pilots().
  std::vector<std::vector<int>> users_of_cell;

  int num_cells() const { return 1 + static_cast<int>(smalls.size()); }
  const BaseStation& cell(int index) const { return index == 0 ? macro : smalls[index - 1]; }
  // K: the pilot-book length, the largest per-cell user count.
  int pilot_len() const;
};

// Per-cell, per-frame load split. n_d is round-half-away-from-zero of
// n_data * l_d; n_u takes the rest.
struct LoadDistribution {
  double l_d = 0.5;
  double l_u = 0.5;
  int n_d = 0;
  int n_u = 0;
};

// Homogeneous PPP over a square of the given area centred on the origin.
// A zero density yields an empty list.
std::vector<Point2D> sample_ppp(double density_per_km2, double area_km2, Rng& rng);

// d^(-alpha_e) with d in metres. Throws std::domain_error for d <= 0.
double pathloss(double distance_m, double exponent);

// Pathloss between two points with the minimum-distance clamp applied.
double link_pathloss(const Point2D& a, const Point2D& b, double exponent);

// Max average received power association: argmax_b tx_power_b * pathloss.
// Ties resolve to the lowest cell index. Returns one cell index per user.
std::vector<int> associate(std::span<const User> users, const BaseStation& macro,
                           std::span<const BaseStation> smalls, double alpha_e);

// Gives users of each cell distinct pilot indices 0..K_b-1 (in user-id
// order) and fills topology.users_of_cell. Cross-cell collisions of equal
// indices are exactly the contamination sources.
void assign_pilots(NetworkTopology& topology);

LoadDistribution make_load(double l_d, int n_data);
LoadDistribution draw_load(int n_data, Rng& rng);
std::vector<LoadDistribution> draw_loads(int num_cells, int n_data, Rng& rng);

// Full random drop: PPP small cells and users, association, pilots.
NetworkTopology make_topology(const SimConfig& config, Rng& rng);

}  // namespace deploy
}  // namespace tdsim
