#include "congame/export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace congame {

namespace {

std::string tuple_label(const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.choices.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p.choices[i]);
  }
  return out;
}

std::string column_name(int facility, int count) {
  return "f" + std::to_string(facility) + "_k" + std::to_string(count);
}

std::string schedule_name(ScheduleKind kind) {
  return kind == ScheduleKind::RoundRobin ? "rr" : "rand";
}

}  // namespace

std::string b_matrix_csv(const FbsModel& model) {
  std::ostringstream os;
  os << "profile";
  for (int j = 1; j <= model.facilities(); ++j)
    for (int k = 1; k <= model.players(); ++k) os << ',' << column_name(j, k);
  os << '\n';
  for (const Profile& p : enumerate_profiles(model)) {
    os << p.index;
    for (std::uint8_t bit : b_row(model, p)) os << ',' << static_cast<int>(bit);
    os << '\n';
  }
  return os.str();
}

std::string b0_matrix_csv(const FbsModel& model, const BasisColumns& basis) {
  const int n = model.players();
  std::ostringstream os;
  os << "profile";
  for (int c : basis.kept) os << ',' << column_name((c - 1) / n + 1, (c - 1) % n + 1);
  os << '\n';
  const std::size_t width = basis.kept.size();
  for (long r = 0; r < basis.rows; ++r) {
    os << (r + 1);
    for (std::size_t c = 0; c < width; ++c)
      os << ',' << static_cast<int>(std::lround(basis.b0[r * width + c]));
    os << '\n';
  }
  return os.str();
}

std::string loads_csv(const FbsModel& model) {
  std::ostringstream os;
  os << "profile,tuple";
  for (int j = 1; j <= model.facilities(); ++j) os << ",r" << j;
  os << '\n';
  for (const Profile& p : enumerate_profiles(model)) {
    os << p.index << ',' << tuple_label(p);
    for (int r : load_vector(model, p)) os << ',' << r;
    os << '\n';
  }
  return os.str();
}

std::string payoffs_csv(const FbsModel& model, const CostMatrix& xi) {
  const auto table = payoff_table(model, xi);
  std::ostringstream os;
  os << "player";
  for (const Profile& p : enumerate_profiles(model)) os << ',' << tuple_label(p);
  os << '\n';
  for (int i = 1; i <= model.players(); ++i) {
    os << i;
    for (double cost : table[i - 1]) os << ',' << format_double(cost);
    os << '\n';
  }
  return os.str();
}

std::string xi_csv(const CostMatrix& xi) {
  std::ostringstream os;
  os << "facility";
  for (int k = 1; k <= xi.players; ++k) os << ",k" << k;
  os << '\n';
  for (int j = 1; j <= xi.facilities; ++j) {
    os << j;
    for (int k = 1; k <= xi.players; ++k) os << ',' << format_double(xi.at(j, k));
    os << '\n';
  }
  return os.str();
}

std::string perf_projection_csv(const FbsModel& model, const PerfTable& perf,
                                const PerfTable& p0) {
  if (perf.size() != p0.size() || static_cast<long>(perf.size()) != model.profile_count())
    throw std::invalid_argument("perf/p0 length mismatch");
  std::ostringstream os;
  os << "profile,tuple,p,p0,abs_error\n";
  for (const Profile& p : enumerate_profiles(model)) {
    const double given = perf[p.index - 1];
    const double realized = p0[p.index - 1];
    os << p.index << ',' << tuple_label(p) << ',' << format_double(given) << ','
       << format_double(realized) << ',' << format_double(std::abs(given - realized)) << '\n';
  }
  return os.str();
}

std::string trace_csv(const FbsModel& model, const Trace& trace) {
  std::ostringstream os;
  os << "# seed: " << trace.seed << '\n';
  os << "# schedule: " << schedule_name(trace.schedule_kind) << '\n';
  os << "# start: " << tuple_label(unrank_profile(model, trace.start)) << '\n';
  os << "# model: " << model_digest(model) << '\n';
  os << "# converged: " << (trace.converged ? 1 : 0) << '\n';
  os << "# absorbing: " << trace.absorbing << '\n';
  os << "step,player,profile,profile_index,potential\n";
  const bool has_potential = !trace.potential_series.empty();
  for (std::size_t t = 0; t < trace.profiles.size(); ++t) {
    os << t << ',' << (t == 0 ? 0 : trace.schedule[t - 1]) << ','
       << tuple_label(unrank_profile(model, trace.profiles[t])) << ',' << trace.profiles[t]
       << ',';
    if (has_potential) os << format_double(trace.potential_series[t]);
    os << '\n';
  }
  return os.str();
}

ParsedTrace parse_trace_csv(std::string_view text) {
  ParsedTrace out;
  std::istringstream stream{std::string(text)};
  std::string line;
  bool header_done = false;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::size_t colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
      std::string value = line.substr(colon + 1);
      value.erase(std::remove(value.begin(), value.end(), ' '), value.end());
      if (key == "seed") out.trace.seed = std::stoull(value);
      else if (key == "schedule")
        out.trace.schedule_kind =
            value == "rr" ? ScheduleKind::RoundRobin : ScheduleKind::UniformRandom;
      else if (key == "model") out.digest = value;
      else if (key == "converged") out.trace.converged = value == "1";
      else if (key == "absorbing") out.trace.absorbing = std::stol(value);
      continue;
    }
    if (!header_done) {  // the CSV column header line
      header_done = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 4) throw std::runtime_error("trace row " + std::to_string(line_no) +
                                                   " is malformed");
    const int player = std::stoi(cells[1]);
    const long index = std::stol(cells[3]);
    if (out.trace.profiles.empty()) {
      out.trace.start = index;
    } else {
      out.trace.schedule.push_back(player);
    }
    out.trace.profiles.push_back(index);
    if (cells.size() >= 5 && !cells[4].empty()) {
      out.trace.potential_series.push_back(std::stod(cells[4]));
      out.has_potential = true;
    }
  }
  if (out.trace.profiles.empty()) throw std::runtime_error("trace file has no rows");
  return out;
}

std::string traces_svg(const std::vector<Trace>& traces, long profile_count) {
  const int width = 720, height = 420;
  const int left = 60, right = 20, top = 30, bottom = 40;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t max_len = 2;
  for (const auto& trace : traces) max_len = std::max(max_len, trace.profiles.size());
  const double x_scale = plot_w / static_cast<double>(max_len - 1);
  const double y_scale = plot_h / static_cast<double>(std::max<long>(profile_count - 1, 1));
  auto x_of = [&](std::size_t t) { return left + x_scale * static_cast<double>(t); };
  auto y_of = [&](long p) { return top + plot_h - y_scale * static_cast<double>(p - 1); };

  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\" "
        "font-family=\"sans-serif\">profile dynamics</text>\n";
  // axes
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << top + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
     << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left - 8 << "\" y=\"" << y_of(profile_count) + 4
     << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << profile_count
     << "</text>\n";
  os << "<text x=\"" << left - 8 << "\" y=\"" << y_of(1) + 4
     << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1</text>\n";
  os << "<text x=\"" << left << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">0</text>\n";
  os << "<text x=\"" << left + plot_w << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
     << (max_len - 1) << "</text>\n";
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">step</text>\n";

  for (std::size_t r = 0; r < traces.size(); ++r) {
    const auto& profiles = traces[r].profiles;
    if (profiles.empty()) continue;
    std::ostringstream path;
    path << "M" << x_of(0) << ' ' << y_of(profiles[0]);
    for (std::size_t t = 1; t < profiles.size(); ++t) {
      path << " H" << x_of(t);  // hold previous level until the step
      path << " V" << y_of(profiles[t]);
    }
    os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\""
       << kColors[r % (sizeof kColors / sizeof *kColors)] << "\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace congame
