#pragma once

// Shared fixtures: a three-player, five-facility system small enough to check
// every table by hand, plus the two cost/criterion instances used across the
// design, dynamics, and CLI tests.

#include <array>
#include <vector>

#include "congame/congestion.hpp"
#include "congame/model.hpp"

namespace fixtures {

inline congame::FbsModel three_player_model() {
  return congame::FbsModel(
      3, 5,
      {
          {{1, 2, 3}, {3, 4, 5}},
          {{1, 2, 4}, {3, 5}, {4, 5}},
          {{1, 3, 4}, {2, 5}, {3, 5}},
      });
}

// A criterion that IS realizable as a congestion-game potential.
inline congame::PerfTable consistent_perf() {
  return {33, 27, 24, 26, 23, 25, 25, 22, 20, 28, 28, 26, 33, 13, 20, 29, 16, 19};
}

// One integer solution realizing consistent_perf().
inline congame::CostMatrix integer_costs() {
  return congame::CostMatrix::from_flat(5, 3, {11, 2, 4, 0, 5, 6, 0, 3, 7, 2, 6, 3, 1, 3, 4});
}

// A criterion that is NOT realizable, together with the cost table the system
// owner happens to run.
inline congame::PerfTable improper_perf() {
  return {29, 25, 24, 28, 12, 18, 25, 24, 19, 27, 29, 24, 32, 19, 27, 25, 23, 22};
}

inline congame::CostMatrix improper_costs() {
  return congame::CostMatrix::from_flat(
      5, 3, {0.5, 0, 0.5, 1.5, 5, 2, 5, 0.5, 10, 11, 5, 3, 0, 0.5, 0});
}

// Least-squares costs closest to improper_perf(), to the four digits the
// tables below carry.
inline congame::CostMatrix closest_costs() {
  return congame::CostMatrix::from_flat(
      5, 3,
      {0.4704, 0.1516, 0.0004, 1.5766, 4.6840, 1.1375, 5.7214, 0.1263, 9.5267, 11.2585, 5.0109,
       2.5485, 0, 0, 0});
}

inline congame::PerfTable closest_potential() {
  return {29,      25,      23.9887, 28.8315, 12.5786, 17.4214, 24.3156, 23.7109, 19.1532,
          26.8641, 28.7218, 24.1641, 32.1142, 18.6828, 26.6329, 25.1359, 23.5674, 22.1170};
}

// The stacked 18x15 design matrix of three_player_model(), row k = b_row of
// profile k.
inline const std::array<std::array<int, 15>, 18>& design_matrix() {
  static const std::array<std::array<int, 15>, 18> b = {{
      {1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0},
      {1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0},
      {1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0},
      {1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0},
      {1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0},
      {1, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 0},
      {1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0},
      {1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0},
      {1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0},
      {1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 0, 0},
      {1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0},
      {1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0},
      {1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 1, 1, 0},
      {0, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1},
      {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1},
      {1, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0},
      {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 1},
      {0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1},
  }};
  return b;
}

// Per-player cost tables of improper_costs() over the 18 profiles, exact.
inline const std::array<std::array<double, 18>, 3>& improper_cost_table() {
  static const std::array<std::array<double, 18>, 3> t = {{
      {6, 7, 5.5, 11.5, 6, 12, 2, 10.5, 2.5, 3.5, 10.5, 6, 15.5, 11.5, 21, 4, 10, 5.5},
      {10.5, 13, 16, 10, 1, 10.5, 5, 11.5, 11.5, 4.5, 10.5, 7, 10.5, 0.5, 10, 3.5, 5, 5},
      {6, 2, 0.5, 21, 5.5, 10.5, 5.5, 5.5, 1, 3.5, 5.5, 1, 15.5, 1.5, 10, 4, 1.5, 0.5},
  }};
  return t;
}

// Same for closest_costs(), rounded to 0.01.
inline const std::array<std::array<double, 18>, 3>& closest_cost_table() {
  static const std::array<std::array<double, 18>, 3> t = {{
      {4.81, 7.01, 4.96, 11.25, 5.28, 11.57, 1.85, 10.88, 2.17, 2.67, 10.73, 5.14, 14.54, 11.38,
       20.79, 2.67, 10.73, 5.14},
      {9.70, 12.55, 16.09, 9.53, 0.13, 9.53, 5.01, 11.26, 11.26, 4.28, 10.17, 7.06, 9.53, 0.13,
       9.53, 2.55, 5.01, 5.01},
      {5.14, 1.14, 0.13, 20.94, 4.68, 9.53, 5.29, 4.68, 0.13, 2.83, 4.68, 0.13, 15.01, 1.58, 9.53,
       3.15, 1.58, 0.13},
  }};
  return t;
}

// Tie-broken best-response choices of the improper instance; identical for
// improper_costs() and closest_costs().
inline const std::array<std::array<int, 18>, 3>& best_response_table() {
  static const std::array<std::array<int, 18>, 3> t = {{
      {2, 1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 1, 1, 1, 1, 2, 1},
      {3, 2, 2, 3, 2, 2, 3, 2, 2, 3, 2, 3, 3, 2, 3, 3, 2, 3},
      {3, 3, 3, 2, 2, 2, 3, 3, 3, 3, 3, 3, 2, 2, 2, 3, 3, 3},
  }};
  return t;
}

// Profile-index transition maps induced by best_response_table().
inline const std::array<std::array<long, 18>, 3>& transition_table() {
  static const std::array<std::array<long, 18>, 3> t = {{
      {10, 2, 3, 4, 5, 6, 7, 17, 9, 10, 2, 3, 4, 5, 6, 7, 17, 9},
      {7, 5, 6, 7, 5, 6, 7, 5, 6, 16, 14, 18, 16, 14, 18, 16, 14, 18},
      {3, 3, 3, 5, 5, 5, 9, 9, 9, 12, 12, 12, 14, 14, 14, 18, 18, 18},
  }};
  return t;
}

// The unique equilibrium of the improper instance, as a profile index.
inline constexpr long kUniqueEquilibrium = 5;

// Document form of the improper instance (model + perf + xi).
inline const char* improper_document() {
  return R"(players: 3
facilities: 5
actions:
  1: {1,2,3} {3,4,5}
  2: {1,2,4} {3,5} {4,5}
  3: {1,3,4} {2,5} {3,5}
perf:
  29 25 24 28 12 18 25 24 19 27 29 24 32 19 27 25 23 22
xi:
  0.5 0 0.5
  1.5 5 2
  5 0.5 10
  11 5 3
  0 0.5 0
)";
}

// Document form of the consistent instance (model + perf + xi + one
// capacity constraint and a fixed facility row, for the CLI paths).
inline const char* consistent_document() {
  return R"(players: 3
facilities: 5
actions:
  1: {1,2,3} {3,4,5}
  2: {1,2,4} {3,5} {4,5}
  3: {1,3,4} {2,5} {3,5}
perf:
  33 27 24 26 23 25 25 22 20 28 28 26 33 13 20 29 16 19
xi:
  11 2 4
  0 5 6
  0 3 7
  2 6 3
  1 3 4
)";
}

}  // namespace fixtures
