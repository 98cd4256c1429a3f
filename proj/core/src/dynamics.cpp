#include "congame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace congame {

namespace {

void check_maps(const std::vector<TransitionMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("no transition maps given");
  for (const auto& map : maps)
    if (map.next.size() != maps.front().next.size())
      throw std::invalid_argument("transition maps disagree on profile count");
}

bool is_fixed_point(const std::vector<TransitionMap>& maps, long k) {
  for (const auto& map : maps)
    if (map.next[k - 1] != k) return false;
  return true;
}

Trace run(const std::vector<TransitionMap>& maps, long start,
          const std::function<int(long step)>& next_player, long max_steps,
          const PerfTable* perf) {
  check_maps(maps);
  const long count = static_cast<long>(maps.front().next.size());
  if (start < 1 || start > count) throw std::invalid_argument("start profile out of range");
  if (perf && static_cast<long>(perf->size()) != count)
    throw std::invalid_argument("perf table length mismatch");

  Trace trace;
  trace.start = start;
  trace.profiles.push_back(start);
  if (perf) trace.potential_series.push_back((*perf)[start - 1]);

  long current = start;
  for (long step = 0;; ++step) {
    if (is_fixed_point(maps, current)) {
      trace.converged = true;
      trace.absorbing = current;
      break;
    }
    if (step >= max_steps) break;
    const int pos = next_player(step);
    current = maps[pos].next[current - 1];
    trace.schedule.push_back(maps[pos].player);
    trace.profiles.push_back(current);
    if (perf) trace.potential_series.push_back((*perf)[current - 1]);
  }
  return trace;
}

}  // namespace

BestResponseMap best_response_map(const FbsModel& model, const PayoffFn& payoffs, int player,
                                  double tie_tol) {
  if (player < 1 || player > model.players()) throw std::invalid_argument("player out of range");
  const int options = model.action_count(player);

  BestResponseMap map;
  map.player = player;
  map.choice.reserve(model.profile_count());
  map.argmin_sets.reserve(model.profile_count());

  std::vector<double> costs(options);
  for (const Profile& p : enumerate_profiles(model)) {
    Profile q = p;
    double scale = 0.0;
    for (int b = 1; b <= options; ++b) {
      q.choices[player - 1] = b;
      costs[b - 1] = payoffs(rank_profile(model, q.choices), player);
      scale = std::max(scale, std::abs(costs[b - 1]));
    }
    const double best = *std::min_element(costs.begin(), costs.end());
    const double threshold = best + tie_tol * (1.0 + scale);

    std::vector<int> argmin;
    for (int b = 1; b <= options; ++b)
      if (costs[b - 1] <= threshold) argmin.push_back(b);

    const int incumbent = p.choices[player - 1];
    const bool keep = std::find(argmin.begin(), argmin.end(), incumbent) != argmin.end();
    map.choice.push_back(keep ? incumbent : argmin.front());
    map.argmin_sets.push_back(std::move(argmin));
  }
  return map;
}

std::vector<BestResponseMap> best_response_maps(const FbsModel& model, const PayoffFn& payoffs,
                                                double tie_tol) {
  std::vector<BestResponseMap> maps;
  maps.reserve(model.players());
  for (int i = 1; i <= model.players(); ++i)
    maps.push_back(best_response_map(model, payoffs, i, tie_tol));
  return maps;
}

TransitionMap transition_map(const FbsModel& model, const BestResponseMap& map) {
  TransitionMap out;
  out.player = map.player;
  out.next.reserve(model.profile_count());
  for (const Profile& p : enumerate_profiles(model)) {
    std::vector<int> choices = p.choices;
    choices[map.player - 1] = map.choice[p.index - 1];
    out.next.push_back(rank_profile(model, choices));
  }
  return out;
}

std::vector<TransitionMap> transition_maps(const FbsModel& model,
                                           const std::vector<BestResponseMap>& maps) {
  std::vector<TransitionMap> out;
  out.reserve(maps.size());
  for (const auto& map : maps) out.push_back(transition_map(model, map));
  return out;
}

Trace simulate(const std::vector<TransitionMap>& maps, long start, ScheduleKind kind,
               std::uint64_t seed, long max_steps, const PerfTable* perf) {
  check_maps(maps);
  if (max_steps < 0) max_steps = 100 * static_cast<long>(maps.front().next.size());
  const int n = static_cast<int>(maps.size());

  Trace trace;
  if (kind == ScheduleKind::RoundRobin) {
    trace = run(maps, start, [n](long step) { return static_cast<int>(step % n); },
                max_steps, perf);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    trace = run(maps, start, [&](long) { return pick(rng); }, max_steps, perf);
  }
  trace.seed = seed;
  trace.schedule_kind = kind;
  return trace;
}

Trace replay(const std::vector<TransitionMap>& maps, long start, const std::vector<int>& schedule,
             const PerfTable* perf) {
  check_maps(maps);
  std::vector<int> position(maps.size() + 1, -1);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const int player = maps[i].player;
    if (player < 1 || player > static_cast<int>(maps.size()))
      throw std::invalid_argument("transition map owner out of range");
    position[player] = static_cast<int>(i);
  }
  for (int player : schedule)
    if (player < 1 || player > static_cast<int>(maps.size()) || position[player] < 0)
      throw std::invalid_argument("schedule activates unknown player " + std::to_string(player));

  // Replays never stop early: each recorded activation is applied even when
  // an intermediate profile is already absorbing.
  const long count = static_cast<long>(maps.front().next.size());
  if (start < 1 || start > count) throw std::invalid_argument("start profile out of range");
  if (perf && static_cast<long>(perf->size()) != count)
    throw std::invalid_argument("perf table length mismatch");

  Trace trace;
  trace.start = start;
  trace.schedule = schedule;
  trace.profiles.push_back(start);
  if (perf) trace.potential_series.push_back((*perf)[start - 1]);
  long current = start;
  for (int player : schedule) {
    current = maps[position[player]].next[current - 1];
    trace.profiles.push_back(current);
    if (perf) trace.potential_series.push_back((*perf)[current - 1]);
  }
  if (is_fixed_point(maps, current)) {
    trace.converged = true;
    trace.absorbing = current;
  }
  return trace;
}

std::vector<long> fixed_points(const FbsModel& model, const std::vector<BestResponseMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("no best-response maps given");
  for (const auto& map : maps)
    if (static_cast<long>(map.choice.size()) != model.profile_count())
      throw std::invalid_argument("best-response maps disagree with the model");

  std::vector<long> out;
  for (const Profile& p : enumerate_profiles(model)) {
    bool fixed = true;
    for (const auto& map : maps) {
      const auto& set = map.argmin_sets[p.index - 1];
      const int incumbent = p.choices[map.player - 1];
      if (std::find(set.begin(), set.end(), incumbent) == set.end()) {
        fixed = false;
        break;
      }
    }
    if (fixed) out.push_back(p.index);
  }
  return out;
}

EquivalenceReport dynamic_equivalence(const std::vector<BestResponseMap>& a,
                                      const std::vector<BestResponseMap>& b,
                                      EquivalenceMode mode) {
  if (a.size() != b.size()) throw std::invalid_argument("map families differ in player count");
  EquivalenceReport report;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].player != b[i].player || a[i].choice.size() != b[i].choice.size())
      throw std::invalid_argument("map families are not over the same model");
    const long count = static_cast<long>(a[i].choice.size());
    for (long k = 1; k <= count; ++k) {
      bool same = mode == EquivalenceMode::Strict
                      ? a[i].argmin_sets[k - 1] == b[i].argmin_sets[k - 1]
                      : a[i].choice[k - 1] == b[i].choice[k - 1];
      if (!same) {
        EquivalenceWitness w;
        w.player = a[i].player;
        w.profile = k;
        if (mode == EquivalenceMode::Strict) {
          w.lhs = a[i].argmin_sets[k - 1];
          w.rhs = b[i].argmin_sets[k - 1];
        } else {
          w.lhs = {a[i].choice[k - 1]};
          w.rhs = {b[i].choice[k - 1]};
        }
        report.witnesses.push_back(std::move(w));
      }
    }
  }
  report.equivalent = report.witnesses.empty();
  return report;
}

NearOptimalityReport near_optimality_check(const PerfTable& perf, const PerfTable& p0,
                                           long absorbing, double epsilon) {
  if (perf.size() != p0.size()) throw std::invalid_argument("perf and p0 differ in length");
  if (perf.empty()) throw std::invalid_argument("empty perf table");
  if (absorbing < 1 || absorbing > static_cast<long>(perf.size()))
    throw std::invalid_argument("absorbing profile out of range");

  NearOptimalityReport report;
  report.epsilon = epsilon;
  for (std::size_t k = 0; k < perf.size(); ++k)
    report.sup_difference = std::max(report.sup_difference, std::abs(perf[k] - p0[k]));
  if (!(epsilon > report.sup_difference))
    throw std::invalid_argument("epsilon " + std::to_string(epsilon) +
                                " does not exceed the criterion gap " +
                                std::to_string(report.sup_difference));

  const auto min_it = std::min_element(perf.begin(), perf.end());
  report.minimizer = static_cast<long>(min_it - perf.begin()) + 1;
  report.gap = std::abs(perf[absorbing - 1] - *min_it);
  report.within_bound = report.gap < 2.0 * epsilon;
  return report;
}

}  // namespace congame
