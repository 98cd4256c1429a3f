#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace congame {

/// One action of one player: the set of facilities it occupies, as sorted
/// 1-based facility ids. The empty action (no facility used) is allowed.
using Action = std::vector<int>;

/// A facility-based system: n players, m shared facilities, per-player action
/// lists, and an optional global cost table (one value per profile, canonical
/// order, to be minimized).
///
/// The constructor validates the structure and throws std::invalid_argument on
/// violations (player/facility counts < 1, empty action lists, facility ids
/// outside 1..m, a facility repeated inside one action). Duplicate actions
/// within one player's list are legal but collected as warnings().
class FbsModel {
 public:
  FbsModel(int players, int facilities, std::vector<std::vector<Action>> actions,
           std::optional<std::vector<double>> perf = std::nullopt);

  int players() const { return players_; }
  int facilities() const { return facilities_; }

  /// Number of profiles, l = prod |A^i|.
  long profile_count() const { return profile_count_; }

  const std::vector<std::vector<Action>>& actions() const { return actions_; }
  const std::vector<Action>& actions_of(int player) const;  // player 1-based
  const Action& action(int player, int index) const;        // both 1-based
  int action_count(int player) const;

  const std::optional<std::vector<double>>& perf() const { return perf_; }
  void set_perf(std::optional<std::vector<double>> perf);

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  int players_;
  int facilities_;
  std::vector<std::vector<Action>> actions_;
  std::optional<std::vector<double>> perf_;
  long profile_count_ = 0;
  std::vector<std::string> warnings_;
};

/// One joint action choice. choices[i-1] is player i's action index in
/// 1..|A^i|; index is the canonical mixed-radix rank in 1..l with player 1
/// most significant.
struct Profile {
  std::vector<int> choices;
  long index = 0;
};

long rank_profile(const FbsModel& model, const std::vector<int>& choices);
Profile unrank_profile(const FbsModel& model, long index);

/// All l profiles in canonical order; position k-1 holds the profile with
/// index k.
std::vector<Profile> enumerate_profiles(const FbsModel& model);

/// Length-m 0/1 vector; entry s is 1 iff facility s belongs to the action.
std::vector<int> incidence_vector(const FbsModel& model, int player, int action);

/// Per-facility user counts r_j at the profile.
std::vector<int> load_vector(const FbsModel& model, const Profile& p);

/// Length m*n unary encoding of the loads: block j holds r_j ones then
/// n - r_j zeros. Stacking these rows over all profiles gives the design
/// matrix B.
std::vector<std::uint8_t> b_row(const FbsModel& model, const Profile& p);

}  // namespace congame
