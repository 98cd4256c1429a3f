#pragma once

#include <functional>
#include <string>
#include <vector>

#include "congame/model.hpp"

namespace congame {

/// Relative knob for tie detection in argmin sets and equilibrium scans; the
/// absolute threshold at a decision point is tie_tol * (1 + max |cost| among
/// the candidates).
inline constexpr double kDefaultTieTol = 1e-9;

/// Facility-cost table Xi: values[(j-1)*n + (k-1)] is the cost of facility j
/// when k players use it. Flattened order [Xi_1(1..n), ..., Xi_m(1..n)].
struct CostMatrix {
  int facilities = 0;  // m
  int players = 0;     // n
  std::vector<double> values;

  double at(int facility, int count) const;  // both 1-based

  static CostMatrix zeros(int facilities, int players);
  static CostMatrix from_flat(int facilities, int players, std::vector<double> values);
};

/// Global cost table, one entry per profile in canonical order.
using PerfTable = std::vector<double>;

/// Player's cost at a profile: sum of Xi_j(r_j) over the facilities in its
/// chosen action. All payoffs in this library are costs to minimize.
double payoff(const FbsModel& model, const CostMatrix& xi, const Profile& p, int player);

/// Potential at a profile: sum over facilities j of Xi_j(1) + ... + Xi_j(r_j).
/// Summation is facility-major, usage-count-minor, so results are
/// deterministic in binary64.
double potential(const FbsModel& model, const CostMatrix& xi, const Profile& p);

/// potential() evaluated over all profiles in canonical order.
PerfTable potential_table(const FbsModel& model, const CostMatrix& xi);

/// Cost of a (profile, player) pair addressed by canonical profile index.
using PayoffFn = std::function<double(long profile_index, int player)>;

PayoffFn payoffs_of(const FbsModel& model, const CostMatrix& xi);

/// Dense payoff table, table[i-1][k-1] = cost of player i at profile k.
std::vector<std::vector<double>> payoff_table(const FbsModel& model, const CostMatrix& xi);

struct PotentialReport {
  bool pass = true;
  double max_violation = 0;
  // witness of the worst violation
  long profile = 0;    // profile index, 0 if no violation at all
  int player = 0;      // 0 for the potential-vs-perf condition
  int alt_action = 0;  // deviation target when player > 0
  std::string describe() const;
};

/// Checks that perf is the potential of the game induced by xi:
/// (a) |potential - perf| <= tol at every profile, and (b) every unilateral
/// deviation changes the deviator's cost by exactly the perf change (within
/// tol). Failures are reported, never thrown.
PotentialReport verify_potential_identity(const FbsModel& model, const CostMatrix& xi,
                                          const PerfTable& perf, double tol);

/// Exhaustive pure Nash equilibria: profiles where no player has a unilateral
/// deviation cheaper by more than the tie threshold.
std::vector<long> nash_enumerate(const FbsModel& model, const PayoffFn& payoffs,
                                 double tie_tol = kDefaultTieTol);

}  // namespace congame
