#include "congame/congestion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace congame {

namespace {

void check_dims(const FbsModel& model, const CostMatrix& xi) {
  if (xi.facilities != model.facilities() || xi.players != model.players())
    throw std::invalid_argument("cost matrix is " + std::to_string(xi.facilities) + "x" +
                                std::to_string(xi.players) + ", model needs " +
                                std::to_string(model.facilities()) + "x" +
                                std::to_string(model.players()));
}

double tie_threshold(double tie_tol, double scale) { return tie_tol * (1.0 + scale); }

}  // namespace

double CostMatrix::at(int facility, int count) const {
  if (facility < 1 || facility > facilities || count < 1 || count > players)
    throw std::invalid_argument("cost matrix access out of range");
  return values[static_cast<std::size_t>(facility - 1) * players + (count - 1)];
}

CostMatrix CostMatrix::zeros(int facilities, int players) {
  return from_flat(facilities, players,
                   std::vector<double>(static_cast<std::size_t>(facilities) * players, 0.0));
}

CostMatrix CostMatrix::from_flat(int facilities, int players, std::vector<double> values) {
  if (facilities < 1 || players < 1)
    throw std::invalid_argument("cost matrix dimensions must be >= 1");
  if (values.size() != static_cast<std::size_t>(facilities) * players)
    throw std::invalid_argument("cost matrix needs " +
                                std::to_string(static_cast<long>(facilities) * players) +
                                " entries, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("cost matrix entries must be finite");
  CostMatrix xi;
  xi.facilities = facilities;
  xi.players = players;
  xi.values = std::move(values);
  return xi;
}

double payoff(const FbsModel& model, const CostMatrix& xi, const Profile& p, int player) {
  check_dims(model, xi);
  const std::vector<int> r = load_vector(model, p);
  double sum = 0.0;
  for (int f : model.action(player, p.choices[player - 1])) sum += xi.at(f, r[f - 1]);
  return sum;
}

double potential(const FbsModel& model, const CostMatrix& xi, const Profile& p) {
  check_dims(model, xi);
  const std::vector<int> r = load_vector(model, p);
  double sum = 0.0;
  for (int j = 1; j <= model.facilities(); ++j)
    for (int k = 1; k <= r[j - 1]; ++k) sum += xi.at(j, k);
  return sum;
}

PerfTable potential_table(const FbsModel& model, const CostMatrix& xi) {
  PerfTable out;
  out.reserve(model.profile_count());
  for (const Profile& p : enumerate_profiles(model)) out.push_back(potential(model, xi, p));
  return out;
}

PayoffFn payoffs_of(const FbsModel& model, const CostMatrix& xi) {
  check_dims(model, xi);
  return [&model, xi](long profile_index, int player) {
    return payoff(model, xi, unrank_profile(model, profile_index), player);
  };
}

std::vector<std::vector<double>> payoff_table(const FbsModel& model, const CostMatrix& xi) {
  check_dims(model, xi);
  std::vector<std::vector<double>> table(model.players());
  for (auto& row : table) row.reserve(model.profile_count());
  for (const Profile& p : enumerate_profiles(model))
    for (int i = 1; i <= model.players(); ++i)
      table[i - 1].push_back(payoff(model, xi, p, i));
  return table;
}

std::string PotentialReport::describe() const {
  std::ostringstream os;
  if (pass) {
    os << "pass (max violation " << max_violation << ")";
    return os.str();
  }
  os << "fail: violation " << max_violation << " at profile " << profile;
  if (player > 0) os << ", player " << player << " deviating to action " << alt_action;
  else os << " (potential vs criterion)";
  return os.str();
}

PotentialReport verify_potential_identity(const FbsModel& model, const CostMatrix& xi,
                                          const PerfTable& perf, double tol) {
  check_dims(model, xi);
  if (static_cast<long>(perf.size()) != model.profile_count())
    throw std::invalid_argument("perf table length mismatch");
  if (tol < 0) throw std::invalid_argument("tol must be >= 0");

  PotentialReport report;
  auto note = [&](double violation, long prof, int player, int alt) {
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.profile = prof;
      report.player = player;
      report.alt_action = alt;
    }
  };

  for (const Profile& p : enumerate_profiles(model)) {
    note(std::abs(potential(model, xi, p) - perf[p.index - 1]), p.index, 0, 0);

    for (int i = 1; i <= model.players(); ++i) {
      const double cost_here = payoff(model, xi, p, i);
      Profile q = p;
      for (int b = 1; b <= model.action_count(i); ++b) {
        if (b == p.choices[i - 1]) continue;
        q.choices[i - 1] = b;
        q.index = rank_profile(model, q.choices);
        const double payoff_delta = payoff(model, xi, q, i) - cost_here;
        const double perf_delta = perf[q.index - 1] - perf[p.index - 1];
        note(std::abs(payoff_delta - perf_delta), p.index, i, b);
      }
      q.choices[i - 1] = p.choices[i - 1];
    }
  }
  report.pass = report.max_violation <= tol;
  return report;
}

std::vector<long> nash_enumerate(const FbsModel& model, const PayoffFn& payoffs,
                                 double tie_tol) {
  std::vector<long> equilibria;
  for (const Profile& p : enumerate_profiles(model)) {
    bool stable = true;
    for (int i = 1; i <= model.players() && stable; ++i) {
      const double cost_here = payoffs(p.index, i);
      double scale = std::abs(cost_here);
      std::vector<double> alternatives(model.action_count(i));
      Profile q = p;
      for (int b = 1; b <= model.action_count(i); ++b) {
        q.choices[i - 1] = b;
        alternatives[b - 1] = payoffs(rank_profile(model, q.choices), i);
        scale = std::max(scale, std::abs(alternatives[b - 1]));
      }
      const double threshold = tie_threshold(tie_tol, scale);
      for (double alt : alternatives)
        if (alt < cost_here - threshold) {
          stable = false;
          break;
        }
    }
    if (stable) equilibria.push_back(p.index);
  }
  return equilibria;
}

}  // namespace congame
