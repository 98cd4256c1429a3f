#include "congame/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace congame {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

}  // namespace

FbsModel::FbsModel(int players, int facilities, std::vector<std::vector<Action>> actions,
                   std::optional<std::vector<double>> perf)
    : players_(players), facilities_(facilities), actions_(std::move(actions)) {
  if (players_ < 1) fail("player count must be >= 1");
  if (facilities_ < 1) fail("facility count must be >= 1");
  if (static_cast<int>(actions_.size()) != players_)
    fail("expected one action list per player");

  for (int i = 0; i < players_; ++i) {
    auto& list = actions_[i];
    if (list.empty()) fail("player " + std::to_string(i + 1) + " has an empty action list");
    for (auto& action : list) {
      std::sort(action.begin(), action.end());
      for (std::size_t s = 0; s < action.size(); ++s) {
        if (action[s] < 1 || action[s] > facilities_)
          fail("player " + std::to_string(i + 1) + ": facility id " +
               std::to_string(action[s]) + " outside 1.." + std::to_string(facilities_));
        if (s > 0 && action[s] == action[s - 1])
          fail("player " + std::to_string(i + 1) + ": facility " +
               std::to_string(action[s]) + " repeated inside one action");
      }
    }
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (list[a] == list[b])
          warnings_.push_back("player " + std::to_string(i + 1) + ": actions " +
                              std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                              " are identical; ties resolve by action index");
  }

  long count = 1;
  constexpr long kMax = std::numeric_limits<long>::max();
  for (const auto& list : actions_) {
    const long size = static_cast<long>(list.size());
    if (count > kMax / size) throw std::overflow_error("profile count overflows");
    count *= size;
  }
  profile_count_ = count;

  set_perf(std::move(perf));
}

void FbsModel::set_perf(std::optional<std::vector<double>> perf) {
  if (perf && static_cast<long>(perf->size()) != profile_count_)
    fail("perf table has " + std::to_string(perf->size()) + " entries, expected " +
         std::to_string(profile_count_));
  perf_ = std::move(perf);
}

const std::vector<Action>& FbsModel::actions_of(int player) const {
  if (player < 1 || player > players_) fail("player index out of range");
  return actions_[player - 1];
}

const Action& FbsModel::action(int player, int index) const {
  const auto& list = actions_of(player);
  if (index < 1 || index > static_cast<int>(list.size())) fail("action index out of range");
  return list[index - 1];
}

int FbsModel::action_count(int player) const {
  return static_cast<int>(actions_of(player).size());
}

long rank_profile(const FbsModel& model, const std::vector<int>& choices) {
  if (static_cast<int>(choices.size()) != model.players())
    fail("profile has wrong number of choices");
  long index = 0;
  for (int i = 0; i < model.players(); ++i) {
    const int size = model.action_count(i + 1);
    if (choices[i] < 1 || choices[i] > size)
      fail("choice for player " + std::to_string(i + 1) + " out of range");
    index = index * size + (choices[i] - 1);
  }
  return index + 1;
}

Profile unrank_profile(const FbsModel& model, long index) {
  if (index < 1 || index > model.profile_count()) fail("profile index out of range");
  Profile p;
  p.index = index;
  p.choices.resize(model.players());
  long rest = index - 1;
  for (int i = model.players() - 1; i >= 0; --i) {
    const int size = model.action_count(i + 1);
    p.choices[i] = static_cast<int>(rest % size) + 1;
    rest /= size;
  }
  return p;
}

std::vector<Profile> enumerate_profiles(const FbsModel& model) {
  std::vector<Profile> out;
  out.reserve(model.profile_count());
  Profile p;
  p.choices.assign(model.players(), 1);
  for (long k = 1; k <= model.profile_count(); ++k) {
    p.index = k;
    out.push_back(p);
    // odometer increment, last player fastest
    for (int i = model.players() - 1; i >= 0; --i) {
      if (p.choices[i] < model.action_count(i + 1)) {
        ++p.choices[i];
        break;
      }
      p.choices[i] = 1;
    }
  }
  return out;
}

std::vector<int> incidence_vector(const FbsModel& model, int player, int action) {
  std::vector<int> v(model.facilities(), 0);
  for (int f : model.action(player, action)) v[f - 1] = 1;
  return v;
}

std::vector<int> load_vector(const FbsModel& model, const Profile& p) {
  std::vector<int> r(model.facilities(), 0);
  for (int i = 1; i <= model.players(); ++i)
    for (int f : model.action(i, p.choices[i - 1])) ++r[f - 1];
  return r;
}

std::vector<std::uint8_t> b_row(const FbsModel& model, const Profile& p) {
  const std::vector<int> r = load_vector(model, p);
  const int n = model.players();
  std::vector<std::uint8_t> row(static_cast<std::size_t>(model.facilities()) * n, 0);
  for (int j = 0; j < model.facilities(); ++j)
    for (int k = 0; k < r[j]; ++k) row[static_cast<std::size_t>(j) * n + k] = 1;
  return row;
}

}  // namespace congame
