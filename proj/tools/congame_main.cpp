// congame: design facility costs so a global criterion becomes the potential
// of a congestion game, then drive the game to a pure Nash equilibrium.
//
// Exit codes: 0 success/pass, 1 usage or input error, 2 no consistent design
// exists, 3 a verification or equivalence check failed.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "congame/design.hpp"
#include "congame/document.hpp"
#include "congame/dynamics.hpp"
#include "congame/export.hpp"

namespace fs = std::filesystem;
using namespace congame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitCheckFailed = 3;

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

std::string kind_name(DesignKind kind) {
  switch (kind) {
    case DesignKind::Exact: return "exact";
    case DesignKind::Inconsistent: return "inconsistent";
    case DesignKind::LeastSquares: return "least-squares";
  }
  return "?";
}

std::string tuple_of(const FbsModel& model, long index) {
  const Profile p = unrank_profile(model, index);
  std::string out = "(";
  for (std::size_t i = 0; i < p.choices.size(); ++i)
    out += (i ? "," : "") + std::to_string(p.choices[i]);
  return out + ")";
}

// Reads "facility: c1 .. cn" lines, the same shape as the document's fixed:
// block.
std::map<int, std::vector<double>> parse_fixed_rows(const std::string& text, int facilities,
                                                    int players) {
  std::map<int, std::vector<double>> fixed;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("fixed row must read '<facility>: c1 .. cn'");
    const int facility = std::stoi(line.substr(0, colon));
    if (facility < 1 || facility > facilities)
      throw std::runtime_error("fixed facility id out of range");
    std::istringstream cells(line.substr(colon + 1));
    std::vector<double> row;
    double v;
    while (cells >> v) row.push_back(v);
    if (static_cast<int>(row.size()) != players)
      throw std::runtime_error("fixed row needs " + std::to_string(players) + " costs");
    fixed[facility] = std::move(row);
  }
  if (fixed.empty()) throw std::runtime_error("no fixed rows found");
  return fixed;
}

// Reads a cost table back from the CSV written by xi_csv().
CostMatrix parse_xi_csv(const std::string& text, int facilities, int players) {
  std::istringstream stream(text);
  std::string line;
  if (!std::getline(stream, line)) throw std::runtime_error("empty cost file");
  std::vector<double> values;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    bool first = true;
    while (std::getline(row, cell, ',')) {
      if (first) {  // facility id column
        first = false;
        continue;
      }
      values.push_back(std::stod(cell));
    }
  }
  return CostMatrix::from_flat(facilities, players, std::move(values));
}

CostMatrix require_costs(const SystemDocument& doc, const std::string& xi_file) {
  if (!xi_file.empty())
    return parse_xi_csv(read_file(xi_file), doc.model.facilities(), doc.model.players());
  if (doc.xi) return *doc.xi;
  throw std::runtime_error("no facility costs: add an xi: block or pass --xi FILE");
}

const PerfTable& require_perf(const SystemDocument& doc) {
  if (!doc.model.perf()) throw std::runtime_error("this command needs a perf: block");
  return *doc.model.perf();
}

void print_warnings(const SystemDocument& doc) {
  for (const auto& w : doc.model.warnings()) std::cerr << "warning: " << w << "\n";
}

int run_design(const std::string& input, const std::string& out_dir, double tol,
               bool use_partial, const std::string& partial_file, bool restricted) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);
  const PerfTable& perf = require_perf(doc);

  std::ostringstream report;
  DesignOutcome outcome;
  const RestrictedDesign* restricted_out = nullptr;
  RestrictedDesign restricted_storage;

  if (restricted) {
    restricted_storage = solve_restricted(doc.model, perf, doc.constraints, tol);
    restricted_out = &restricted_storage;
    outcome = restricted_storage.outcome;
    for (const auto& w : restricted_storage.partition.warnings)
      std::cerr << "warning: " << w << "\n";
    report << "mode: restricted (" << restricted_storage.partition.desirable.size()
           << " desirable, " << restricted_storage.partition.undesirable.size()
           << " undesirable profiles)\n";
  } else if (use_partial) {
    std::map<int, std::vector<double>> fixed = doc.fixed;
    if (!partial_file.empty())
      fixed = parse_fixed_rows(read_file(partial_file), doc.model.facilities(),
                               doc.model.players());
    if (fixed.empty())
      throw std::runtime_error("--partial needs a fixed: block or a file of fixed rows");
    outcome = solve_partial(doc.model, perf, fixed, tol);
    report << "mode: partial (" << fixed.size() << " fixed facilities)\n";
  } else {
    outcome = solve_exact(build_design_system(doc.model, perf), tol);
    report << "mode: full\n";
  }

  report << "outcome: " << kind_name(outcome.kind) << "\n";
  report << "rank: " << outcome.rank << "\n";
  report << "freedom: " << outcome.freedom << "\n";
  report << "residual: " << format_double(outcome.residual) << "\n";

  if (outcome.kind == DesignKind::Exact) {
    if (!restricted_out) {
      double perf_scale = 0.0;
      for (double v : perf) perf_scale = std::max(perf_scale, std::abs(v));
      const auto verification =
          verify_potential_identity(doc.model, outcome.xi, perf, tol * (1.0 + perf_scale));
      report << "verification: " << verification.describe() << "\n";
    }
    write_file(out_path(out_dir, "xi.csv"), xi_csv(outcome.xi));
    report << "wrote: xi.csv\n";
    if (restricted_out) {
      report << "penalty constants: c* = " << format_double(restricted_out->c_star)
             << ", P* = " << format_double(restricted_out->p_star)
             << "  (rule: 10*(1+max over desirable profiles))\n";
      std::ostringstream perf_csv;
      perf_csv << "profile,tuple,penalized_p\n";
      for (const Profile& p : enumerate_profiles(doc.model)) {
        perf_csv << p.index << ',';
        for (std::size_t i = 0; i < p.choices.size(); ++i)
          perf_csv << (i ? " " : "") << p.choices[i];
        perf_csv << ',' << format_double(restricted_out->penalized_perf[p.index - 1]) << '\n';
      }
      write_file(out_path(out_dir, "penalized_perf.csv"), perf_csv.str());
      std::ostringstream pay_csv;
      pay_csv << "player";
      for (const Profile& p : enumerate_profiles(doc.model)) {
        pay_csv << ',';
        for (std::size_t i = 0; i < p.choices.size(); ++i)
          pay_csv << (i ? " " : "") << p.choices[i];
      }
      pay_csv << '\n';
      for (int i = 1; i <= doc.model.players(); ++i) {
        pay_csv << i;
        for (double c : restricted_out->penalized_payoffs[i - 1])
          pay_csv << ',' << format_double(c);
        pay_csv << '\n';
      }
      write_file(out_path(out_dir, "penalized_payoffs.csv"), pay_csv.str());
      report << "wrote: penalized_perf.csv penalized_payoffs.csv\n";
    }
  } else {
    report << "no facility-cost table realizes this criterion; "
              "`congame closest` finds the nearest one\n";
  }

  write_file(out_path(out_dir, "report.txt"), report.str());
  std::cout << report.str();
  return outcome.kind == DesignKind::Exact ? kExitOk : kExitInconsistent;
}

int run_closest(const std::string& input, const std::string& out_dir, double tol) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);
  const PerfTable& perf = require_perf(doc);

  const DesignOutcome out = least_squares_design(doc.model, perf, tol);
  write_file(out_path(out_dir, "xi0.csv"), xi_csv(out.xi));
  write_file(out_path(out_dir, "p0.csv"), perf_projection_csv(doc.model, perf, out.p0));

  std::ostringstream report;
  report << "outcome: " << kind_name(out.kind) << "\n";
  report << "rank: " << out.rank << "\n";
  report << "kept columns:";
  for (int c : out.kept_columns) report << ' ' << c;
  report << "\n";
  report << "epsilon_hat: " << format_double(out.epsilon_hat) << "\n";
  report << "wrote: xi0.csv p0.csv\n";
  write_file(out_path(out_dir, "report.txt"), report.str());
  std::cout << report.str();
  return kExitOk;
}

int run_simulate(const std::string& input, const std::string& xi_file,
                 const std::string& out_dir, std::uint64_t seed, const std::string& schedule,
                 const std::string& start_tuple, bool all_starts, long max_steps,
                 const std::string& svg_path) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);
  const CostMatrix xi = require_costs(doc, xi_file);
  const ScheduleKind kind =
      schedule == "rr" ? ScheduleKind::RoundRobin : ScheduleKind::UniformRandom;
  if (schedule != "rr" && schedule != "rand")
    throw std::runtime_error("--schedule must be rr or rand");

  const auto maps =
      transition_maps(doc.model, best_response_maps(doc.model, payoffs_of(doc.model, xi)));
  const PerfTable* perf = doc.model.perf() ? &*doc.model.perf() : nullptr;

  std::vector<long> starts;
  if (all_starts) {
    starts.resize(doc.model.profile_count());
    for (long k = 0; k < doc.model.profile_count(); ++k) starts[k] = k + 1;
  } else if (!start_tuple.empty()) {
    std::istringstream is(start_tuple);
    std::vector<int> choices;
    int c;
    while (is >> c) choices.push_back(c);
    starts.push_back(rank_profile(doc.model, choices));
  } else {
    starts.push_back(1);
  }

  std::vector<Trace> traces(starts.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < starts.size();) {
      // one independent run per start; seeds offset so runs differ
      traces[i] = simulate(maps, starts[i], kind, seed + i, max_steps, perf);
      write_file(out_path(out_dir, "trace_" + std::to_string(starts[i]) + ".csv"),
                 trace_csv(doc.model, traces[i]));
    }
  };
  const std::size_t thread_count =
      std::min<std::size_t>(starts.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (!svg_path.empty()) write_file(svg_path, traces_svg(traces, doc.model.profile_count()));

  std::size_t converged = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Trace& trace = traces[i];
    std::cout << "start " << tuple_of(doc.model, trace.start) << " [" << trace.start << "]: ";
    if (trace.converged) {
      ++converged;
      std::cout << "absorbed at " << tuple_of(doc.model, trace.absorbing) << " ["
                << trace.absorbing << "] after " << trace.schedule.size() << " activations\n";
    } else {
      std::cout << "no convergence within " << trace.schedule.size() << " activations\n";
    }
  }
  std::cout << converged << "/" << traces.size() << " runs converged\n";
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& xi_file, double tol) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);
  const CostMatrix xi = require_costs(doc, xi_file);
  const PerfTable& perf = require_perf(doc);
  const auto report = verify_potential_identity(doc.model, xi, perf, tol);
  std::cout << "potential identity: " << report.describe() << "\n";
  if (!report.pass && report.profile > 0)
    std::cout << "witness profile: " << tuple_of(doc.model, report.profile) << " ["
              << report.profile << "]\n";
  return report.pass ? kExitOk : kExitCheckFailed;
}

int run_nash(const std::string& input, const std::string& xi_file) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);
  const CostMatrix xi = require_costs(doc, xi_file);
  const auto equilibria = nash_enumerate(doc.model, payoffs_of(doc.model, xi));
  std::cout << equilibria.size() << " pure equilibria\n";
  for (long k : equilibria)
    std::cout << tuple_of(doc.model, k) << " [" << k << "]\n";
  return kExitOk;
}

int run_equiv(const std::string& input_a, const std::string& input_b, bool selected) {
  const SystemDocument a = load_system_document(input_a);
  const SystemDocument b = load_system_document(input_b);
  if (model_digest(a.model) != model_digest(b.model))
    throw std::runtime_error("the two documents describe different models");
  if (!a.xi || !b.xi) throw std::runtime_error("both documents need an xi: block");

  const auto maps_a = best_response_maps(a.model, payoffs_of(a.model, *a.xi));
  const auto maps_b = best_response_maps(b.model, payoffs_of(b.model, *b.xi));
  const EquivalenceMode mode = selected ? EquivalenceMode::Selected : EquivalenceMode::Strict;
  const auto report = dynamic_equivalence(maps_a, maps_b, mode);
  if (report.equivalent) {
    std::cout << "dynamically equivalent (" << (selected ? "selected" : "strict") << " mode)\n";
    return kExitOk;
  }
  std::cout << "not equivalent; " << report.witnesses.size() << " disagreements\n";
  for (const auto& w : report.witnesses) {
    std::cout << "player " << w.player << " at profile " << tuple_of(a.model, w.profile) << " ["
              << w.profile << "]: {";
    for (std::size_t i = 0; i < w.lhs.size(); ++i) std::cout << (i ? "," : "") << w.lhs[i];
    std::cout << "} vs {";
    for (std::size_t i = 0; i < w.rhs.size(); ++i) std::cout << (i ? "," : "") << w.rhs[i];
    std::cout << "}\n";
  }
  return kExitCheckFailed;
}

int run_export(const std::string& input, const std::string& out_dir) {
  const SystemDocument doc = load_system_document(input);
  print_warnings(doc);

  write_file(out_path(out_dir, "B.csv"), b_matrix_csv(doc.model));
  const PerfTable zeros(doc.model.profile_count(), 0.0);
  const DesignSystem sys =
      build_design_system(doc.model, doc.model.perf() ? *doc.model.perf() : zeros);
  write_file(out_path(out_dir, "B0.csv"), b0_matrix_csv(doc.model, basis_columns(sys)));
  write_file(out_path(out_dir, "loads.csv"), loads_csv(doc.model));
  std::cout << "wrote: B.csv B0.csv loads.csv";
  if (doc.xi) {
    write_file(out_path(out_dir, "payoffs.csv"), payoffs_csv(doc.model, *doc.xi));
    std::cout << " payoffs.csv";
  } else {
    std::cout << " (no xi: block, payoffs.csv skipped)";
  }
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congestion-game design and best-response dynamics toolkit"};
  app.require_subcommand(1);

  std::string input, input_b, out_dir = ".", xi_file, svg_path;
  std::string schedule = "rand", start_tuple, partial_file;
  double tol = kDesignTol;
  std::uint64_t seed = 0;
  long max_steps = -1;
  bool all_starts = false, restricted = false, strict = false, selected = false;

  auto* design = app.add_subcommand(
      "design", "solve for facility costs making the criterion a potential");
  design->add_option("input", input, "system document")->required();
  auto* partial_opt = design
                          ->add_option("--partial", partial_file,
                                       "design only the non-fixed facilities (rows from FILE, "
                                       "or the document's fixed: block)")
                          ->expected(0, 1);
  design->add_flag("--restricted", restricted,
                   "design over the profiles satisfying the constraints: block");
  design->add_option("--tol", tol, "consistency tolerance");
  design->add_option("-o,--out", out_dir, "output directory");

  auto* closest = app.add_subcommand("closest", "least-squares closest congestion game");
  closest->add_option("input", input, "system document")->required();
  closest->add_option("--tol", tol, "rank tolerance");
  closest->add_option("-o,--out", out_dir, "output directory");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "run seeded best-response dynamics to an equilibrium");
  simulate_cmd->add_option("input", input, "system document")->required();
  simulate_cmd->add_option("--xi", xi_file, "cost table CSV (overrides the xi: block)");
  simulate_cmd->add_option("--seed", seed, "base seed for random activation");
  simulate_cmd->add_option("--schedule", schedule, "activation order: rr or rand");
  simulate_cmd->add_option("--start", start_tuple, "start profile as a choice tuple, e.g. \"1 2 1\"");
  simulate_cmd->add_flag("--all-starts", all_starts, "one run from every profile");
  simulate_cmd->add_option("--max-steps", max_steps, "activation budget (default 100 * profiles)");
  simulate_cmd->add_option("--svg", svg_path, "write a step plot of profile index vs step");
  simulate_cmd->add_option("-o,--out", out_dir, "output directory for trace files");

  auto* verify = app.add_subcommand("verify", "check the potential identity of xi against perf");
  verify->add_option("input", input, "system document")->required();
  verify->add_option("--xi", xi_file, "cost table CSV (overrides the xi: block)");
  verify->add_option("--tol", tol, "violation tolerance");

  auto* nash = app.add_subcommand("nash", "list all pure Nash equilibria");
  nash->add_option("input", input, "system document")->required();
  nash->add_option("--xi", xi_file, "cost table CSV (overrides the xi: block)");

  auto* equiv = app.add_subcommand("equiv", "compare best-response dynamics of two documents");
  equiv->add_option("input-a", input, "first system document")->required();
  equiv->add_option("input-b", input_b, "second system document")->required();
  equiv->add_flag("--strict", strict, "compare full argmin sets (default)");
  equiv->add_flag("--selected", selected, "compare tie-broken selections only");

  auto* export_cmd = app.add_subcommand("export", "write B, B0, loads and payoff tables");
  export_cmd->add_option("input", input, "system document")->required();
  export_cmd->add_option("-o,--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (design->parsed())
      return run_design(input, out_dir, tol, partial_opt->count() > 0, partial_file, restricted);
    if (closest->parsed()) return run_closest(input, out_dir, tol);
    if (simulate_cmd->parsed())
      return run_simulate(input, xi_file, out_dir, seed, schedule, start_tuple, all_starts,
                          max_steps, svg_path);
    if (verify->parsed()) return run_verify(input, xi_file, tol);
    if (nash->parsed()) return run_nash(input, xi_file);
    if (equiv->parsed()) return run_equiv(input, input_b, selected && !strict);
    if (export_cmd->parsed()) return run_export(input, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
