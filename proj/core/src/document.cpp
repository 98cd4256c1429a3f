#include "congame/document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace congame {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& token, int line) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "expected a number, got '" + token + "'");
  if (!std::isfinite(value)) throw ParseError(line, "number '" + token + "' is not finite");
  return value;
}

int parse_int(const std::string& token, int line) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "expected an integer, got '" + token + "'");
  return value;
}

// "{1,2,3}" or "{1 2 3}" or "{}"
Action parse_action(std::string_view text, int line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError(line, "action must be a braced facility set, got '" + std::string(text) + "'");
  std::string inner{text.substr(1, text.size() - 2)};
  std::replace(inner.begin(), inner.end(), ',', ' ');
  Action action;
  for (const auto& tok : split_ws(inner)) action.push_back(parse_int(tok, line));
  return action;
}

const char* const kSections[] = {"players", "facilities", "actions",
                                 "perf",    "xi",         "constraints",
                                 "fixed"};

// A line of the form "name: ..." where name is an identifier. Content lines
// in every block start with a digit, '-', or '{', so this cannot collide.
bool looks_like_key(std::string_view line, std::string& name, std::string& rest) {
  const std::size_t colon = line.find(':');
  if (colon == std::string_view::npos) return false;
  const std::string_view head = trim(line.substr(0, colon));
  if (head.empty() || !(std::isalpha(static_cast<unsigned char>(head.front())) || head.front() == '_'))
    return false;
  for (char c : head)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  name = std::string(head);
  rest = std::string(trim(line.substr(colon + 1)));
  return true;
}

struct RawDocument {
  std::optional<int> players;
  std::optional<int> facilities;
  std::map<int, std::vector<Action>> actions;          // keyed by player, with line info lost
  std::vector<std::pair<int, std::string>> perf_lines;  // (line number, content)
  std::vector<std::pair<int, std::string>> xi_lines;
  std::vector<std::pair<int, std::string>> constraint_lines;
  std::vector<std::pair<int, std::string>> fixed_lines;
  int actions_line = 0;
};

}  // namespace

SystemDocument parse_system_document(std::string_view text) {
  RawDocument raw;
  std::string section;

  int line_no = 0;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;

    std::string key, rest;
    if (looks_like_key(body, key, rest)) {
      if (std::find(std::begin(kSections), std::end(kSections), key) == std::end(kSections))
        throw ParseError(line_no, "unknown key '" + key + "'");
      section = key;
      if (key == "players") {
        if (rest.empty()) throw ParseError(line_no, "players: needs a value");
        raw.players = parse_int(rest, line_no);
      } else if (key == "facilities") {
        if (rest.empty()) throw ParseError(line_no, "facilities: needs a value");
        raw.facilities = parse_int(rest, line_no);
      } else if (!rest.empty()) {
        // block section with inline first content line
        if (key == "perf") raw.perf_lines.emplace_back(line_no, rest);
        else if (key == "xi") raw.xi_lines.emplace_back(line_no, rest);
        else if (key == "constraints") raw.constraint_lines.emplace_back(line_no, rest);
        else if (key == "fixed") raw.fixed_lines.emplace_back(line_no, rest);
        else throw ParseError(line_no, key + ": content must start on the next line");
      } else if (key == "actions") {
        raw.actions_line = line_no;
      }
      continue;
    }

    if (section == "actions") {
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos)
        throw ParseError(line_no, "action line must read '<player>: {..} {..} ...'");
      const int player = parse_int(std::string(trim(line.substr(0, colon))), line_no);
      if (raw.actions.count(player))
        throw ParseError(line_no, "player " + std::to_string(player) + " listed twice");
      std::vector<Action> list;
      std::string_view rest_view = trim(std::string_view(line).substr(colon + 1));
      while (!rest_view.empty()) {
        if (rest_view.front() != '{')
          throw ParseError(line_no, "actions must be braced facility sets");
        const std::size_t close = rest_view.find('}');
        if (close == std::string_view::npos) throw ParseError(line_no, "unterminated action set");
        list.push_back(parse_action(rest_view.substr(0, close + 1), line_no));
        rest_view = trim(rest_view.substr(close + 1));
      }
      if (list.empty()) throw ParseError(line_no, "player needs at least one action");
      raw.actions[player] = std::move(list);
    } else if (section == "perf") {
      raw.perf_lines.emplace_back(line_no, std::string(body));
    } else if (section == "xi") {
      raw.xi_lines.emplace_back(line_no, std::string(body));
    } else if (section == "constraints") {
      raw.constraint_lines.emplace_back(line_no, std::string(body));
    } else if (section == "fixed") {
      raw.fixed_lines.emplace_back(line_no, std::string(body));
    } else {
      throw ParseError(line_no, "content before any section");
    }
  }

  if (!raw.players) throw ParseError(line_no, "missing players:");
  if (!raw.facilities) throw ParseError(line_no, "missing facilities:");
  if (raw.actions.empty()) throw ParseError(line_no, "missing actions:");

  const int n = *raw.players;
  std::vector<std::vector<Action>> actions;
  for (int i = 1; i <= n; ++i) {
    auto it = raw.actions.find(i);
    if (it == raw.actions.end())
      throw ParseError(raw.actions_line, "no action list for player " + std::to_string(i));
    actions.push_back(it->second);
  }
  if (static_cast<int>(raw.actions.size()) != n)
    throw ParseError(raw.actions_line, "action lists for unknown players present");

  FbsModel model(n, *raw.facilities, std::move(actions));

  // perf: flat vector lines, or "c1 .. cn: value" map lines
  if (!raw.perf_lines.empty()) {
    const bool map_form = raw.perf_lines.front().second.find(':') != std::string::npos;
    std::vector<double> perf;
    if (map_form) {
      perf.assign(model.profile_count(), std::nan(""));
      for (const auto& [ln, content] : raw.perf_lines) {
        const std::size_t colon = content.find(':');
        if (colon == std::string::npos)
          throw ParseError(ln, "perf map line must read '<choice tuple>: value'");
        std::vector<int> choices;
        for (const auto& tok : split_ws(content.substr(0, colon)))
          choices.push_back(parse_int(tok, ln));
        long index = 0;
        try {
          index = rank_profile(model, choices);
        } catch (const std::exception& e) {
          throw ParseError(ln, e.what());
        }
        if (!std::isnan(perf[index - 1]))
          throw ParseError(ln, "profile listed twice in perf map");
        perf[index - 1] = parse_number(std::string(trim(content.substr(colon + 1))), ln);
      }
      for (std::size_t k = 0; k < perf.size(); ++k)
        if (std::isnan(perf[k]))
          throw ParseError(line_no, "perf map misses profile " + std::to_string(k + 1));
    } else {
      for (const auto& [ln, content] : raw.perf_lines) {
        if (content.find(':') != std::string::npos)
          throw ParseError(ln, "perf mixes vector and map forms");
        for (const auto& tok : split_ws(content)) perf.push_back(parse_number(tok, ln));
      }
      if (static_cast<long>(perf.size()) != model.profile_count())
        throw ParseError(raw.perf_lines.back().first,
                         "perf has " + std::to_string(perf.size()) + " values, expected " +
                             std::to_string(model.profile_count()));
    }
    model.set_perf(std::move(perf));
  }

  std::optional<CostMatrix> xi;
  if (!raw.xi_lines.empty()) {
    std::vector<double> values;
    for (const auto& [ln, content] : raw.xi_lines)
      for (const auto& tok : split_ws(content)) values.push_back(parse_number(tok, ln));
    const std::size_t expected =
        static_cast<std::size_t>(model.facilities()) * model.players();
    if (values.size() != expected)
      throw ParseError(raw.xi_lines.back().first,
                       "xi has " + std::to_string(values.size()) + " values, expected " +
                           std::to_string(expected));
    xi = CostMatrix::from_flat(model.facilities(), model.players(), std::move(values));
  }

  std::vector<Constraint> constraints;
  for (const auto& [ln, content] : raw.constraint_lines) {
    const std::size_t lt = content.find('<');
    if (lt == std::string::npos)
      throw ParseError(ln, "constraint must read 'k1 .. km < threshold'");
    Constraint c;
    for (const auto& tok : split_ws(content.substr(0, lt)))
      c.coeffs.push_back(parse_number(tok, ln));
    if (static_cast<int>(c.coeffs.size()) != model.facilities())
      throw ParseError(ln, "constraint needs " + std::to_string(model.facilities()) +
                               " coefficients");
    const auto rhs = split_ws(content.substr(lt + 1));
    if (rhs.size() != 1) throw ParseError(ln, "constraint needs one threshold after '<'");
    c.threshold = parse_number(rhs[0], ln);
    constraints.push_back(std::move(c));
  }

  std::map<int, std::vector<double>> fixed;
  for (const auto& [ln, content] : raw.fixed_lines) {
    const std::size_t colon = content.find(':');
    if (colon == std::string::npos)
      throw ParseError(ln, "fixed line must read '<facility>: c1 .. cn'");
    const int facility = parse_int(std::string(trim(content.substr(0, colon))), ln);
    if (facility < 1 || facility > model.facilities())
      throw ParseError(ln, "fixed facility id out of range");
    if (fixed.count(facility)) throw ParseError(ln, "facility fixed twice");
    std::vector<double> row;
    for (const auto& tok : split_ws(content.substr(colon + 1)))
      row.push_back(parse_number(tok, ln));
    if (static_cast<int>(row.size()) != model.players())
      throw ParseError(ln, "fixed row needs " + std::to_string(model.players()) + " costs");
    fixed[facility] = std::move(row);
  }

  return SystemDocument{std::move(model), std::move(xi), std::move(constraints),
                        std::move(fixed)};
}

SystemDocument load_system_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system_document(buffer.str());
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

namespace {

void serialize_model(std::ostringstream& os, const FbsModel& model) {
  os << "players: " << model.players() << "\n";
  os << "facilities: " << model.facilities() << "\n";
  os << "actions:\n";
  for (int i = 1; i <= model.players(); ++i) {
    os << "  " << i << ":";
    for (const Action& action : model.actions_of(i)) {
      os << " {";
      for (std::size_t s = 0; s < action.size(); ++s) os << (s ? "," : "") << action[s];
      os << "}";
    }
    os << "\n";
  }
}

}  // namespace

std::string serialize_system_document(const SystemDocument& doc) {
  std::ostringstream os;
  serialize_model(os, doc.model);
  if (doc.model.perf()) {
    os << "perf:\n  ";
    const auto& perf = *doc.model.perf();
    for (std::size_t k = 0; k < perf.size(); ++k) os << (k ? " " : "") << format_double(perf[k]);
    os << "\n";
  }
  if (doc.xi) {
    os << "xi:\n";
    for (int j = 1; j <= doc.xi->facilities; ++j) {
      os << "  ";
      for (int k = 1; k <= doc.xi->players; ++k)
        os << (k > 1 ? " " : "") << format_double(doc.xi->at(j, k));
      os << "\n";
    }
  }
  if (!doc.constraints.empty()) {
    os << "constraints:\n";
    for (const Constraint& c : doc.constraints) {
      os << " ";
      for (double k : c.coeffs) os << " " << format_double(k);
      os << " < " << format_double(c.threshold) << "\n";
    }
  }
  if (!doc.fixed.empty()) {
    os << "fixed:\n";
    for (const auto& [facility, row] : doc.fixed) {
      os << "  " << facility << ":";
      for (double v : row) os << " " << format_double(v);
      os << "\n";
    }
  }
  return os.str();
}

std::string model_digest(const FbsModel& model) {
  std::ostringstream os;
  serialize_model(os, model);
  const std::string bytes = os.str();
  std::uint64_t hash = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buffer, 16);
}

}  // namespace congame
