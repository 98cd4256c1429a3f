#pragma once

#include <cstdint>
#include <vector>

#include "congame/congestion.hpp"

namespace congame {

/// Myopic best response of one player at every profile. argmin_sets[k-1]
/// holds all actions within the tie threshold of the player's cheapest reply
/// at profile k; choice[k-1] is the deterministic selection (the incumbent
/// action when it attains the minimum, else the smallest index in the set).
struct BestResponseMap {
  int player = 0;
  std::vector<int> choice;
  std::vector<std::vector<int>> argmin_sets;
};

/// Profile-index form of a best-response map: next[k-1] is the profile
/// reached from profile k when the owning player switches to its selected
/// reply (all other coordinates unchanged).
struct TransitionMap {
  int player = 0;
  std::vector<long> next;
};

BestResponseMap best_response_map(const FbsModel& model, const PayoffFn& payoffs,
                                  int player, double tie_tol = kDefaultTieTol);
std::vector<BestResponseMap> best_response_maps(const FbsModel& model, const PayoffFn& payoffs,
                                                double tie_tol = kDefaultTieTol);

TransitionMap transition_map(const FbsModel& model, const BestResponseMap& map);
std::vector<TransitionMap> transition_maps(const FbsModel& model,
                                           const std::vector<BestResponseMap>& maps);

enum class ScheduleKind { RoundRobin, UniformRandom };

/// One activation run. profiles.front() is the start; step t activates
/// schedule[t-1] and moves to profiles[t]. A recorded schedule replays the
/// run exactly, independent of the generator that produced it.
struct Trace {
  std::uint64_t seed = 0;
  ScheduleKind schedule_kind = ScheduleKind::UniformRandom;
  long start = 0;
  std::vector<int> schedule;
  std::vector<long> profiles;
  bool converged = false;
  long absorbing = 0;  // valid when converged
  std::vector<double> potential_series;  // parallel to profiles when perf given
};

/// Runs one-player-at-a-time best-response updates until the profile is a
/// fixed point of every player's map or max_steps activations happen.
/// max_steps < 0 selects the default 100 * l. Non-convergence is reported in
/// the trace, not thrown.
Trace simulate(const std::vector<TransitionMap>& maps, long start, ScheduleKind kind,
               std::uint64_t seed, long max_steps = -1, const PerfTable* perf = nullptr);

/// Re-runs a recorded activation schedule deterministically.
Trace replay(const std::vector<TransitionMap>& maps, long start,
             const std::vector<int>& schedule, const PerfTable* perf = nullptr);

/// Profiles where every player's incumbent action lies in its argmin set
/// (the pure Nash equilibria of the induced game).
std::vector<long> fixed_points(const FbsModel& model, const std::vector<BestResponseMap>& maps);

enum class EquivalenceMode { Strict, Selected };

struct EquivalenceWitness {
  int player = 0;
  long profile = 0;
  std::vector<int> lhs;  // argmin set (Strict) or selected choice (Selected)
  std::vector<int> rhs;
};

struct EquivalenceReport {
  bool equivalent = true;
  std::vector<EquivalenceWitness> witnesses;
};

/// Same-profile-dynamics check between two map families over the same model.
/// Strict compares full argmin sets; Selected compares tie-broken choices.
EquivalenceReport dynamic_equivalence(const std::vector<BestResponseMap>& a,
                                      const std::vector<BestResponseMap>& b,
                                      EquivalenceMode mode);

struct NearOptimalityReport {
  double epsilon = 0;
  double sup_difference = 0;  // ‖perf - p0‖_inf
  double gap = 0;             // |perf(absorbing) - min perf|
  long minimizer = 0;         // first argmin of perf
  bool within_bound = false;  // gap < 2 * epsilon
};

/// Near-optimality certificate for the absorbing profile of an equivalent
/// dynamics pair. Requires epsilon > ‖perf - p0‖_inf (throws
/// std::invalid_argument otherwise) and reports whether the absorbing
/// profile's cost is within 2 * epsilon of the optimum.
NearOptimalityReport near_optimality_check(const PerfTable& perf, const PerfTable& p0,
                                           long absorbing, double epsilon);

}  // namespace congame
