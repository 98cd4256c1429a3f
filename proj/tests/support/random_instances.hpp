#pragma once

// Seeded generators for small random instances: models with n <= 4 players,
// m <= 6 facilities, at most 4 actions per player, and random cost tables.

#include <random>
#include <vector>

#include "congame/congestion.hpp"
#include "congame/model.hpp"

namespace testgen {

inline congame::FbsModel random_model(std::mt19937& rng) {
  std::uniform_int_distribution<int> players_dist(1, 4);
  std::uniform_int_distribution<int> facilities_dist(1, 6);
  std::uniform_int_distribution<int> size_dist(1, 4);
  std::bernoulli_distribution member(0.5);

  const int n = players_dist(rng);
  const int m = facilities_dist(rng);
  std::vector<std::vector<congame::Action>> actions(n);
  for (auto& list : actions) {
    const int size = size_dist(rng);
    for (int a = 0; a < size; ++a) {
      congame::Action action;
      for (int f = 1; f <= m; ++f)
        if (member(rng)) action.push_back(f);
      list.push_back(std::move(action));  // may be empty or duplicate another
    }
  }
  return congame::FbsModel(n, m, std::move(actions));
}

inline congame::CostMatrix random_costs(std::mt19937& rng, const congame::FbsModel& model) {
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  std::vector<double> values(static_cast<std::size_t>(model.facilities()) * model.players());
  for (double& v : values) v = value(rng);
  return congame::CostMatrix::from_flat(model.facilities(), model.players(), std::move(values));
}

// A criterion guaranteed to be realizable: the potential of random costs.
inline congame::PerfTable random_consistent_perf(std::mt19937& rng,
                                                 const congame::FbsModel& model) {
  return congame::potential_table(model, random_costs(rng, model));
}

inline congame::PerfTable random_perf(std::mt19937& rng, const congame::FbsModel& model) {
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  congame::PerfTable perf(model.profile_count());
  for (double& v : perf) v = value(rng);
  return perf;
}

}  // namespace testgen
