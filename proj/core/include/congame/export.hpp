#pragma once

#include <string>
#include <vector>

#include "congame/document.hpp"
#include "congame/dynamics.hpp"

namespace congame {

// CSV exports. Every table has a fixed header row, 1-based indices, canonical
// profile order, and shortest round-trip numbers, so identical inputs yield
// byte-identical files.

std::string b_matrix_csv(const FbsModel& model);
std::string b0_matrix_csv(const FbsModel& model, const BasisColumns& basis);
std::string loads_csv(const FbsModel& model);
std::string payoffs_csv(const FbsModel& model, const CostMatrix& xi);
std::string xi_csv(const CostMatrix& xi);
/// Given vs realized criterion, per profile: p, p0 and |p - p0|.
std::string perf_projection_csv(const FbsModel& model, const PerfTable& perf,
                                const PerfTable& p0);

/// Trace file: '#'-prefixed header lines (seed, schedule, start, model digest)
/// followed by one CSV row per step. Step 0 carries the start profile with
/// player 0.
std::string trace_csv(const FbsModel& model, const Trace& trace);

struct ParsedTrace {
  std::string digest;       // model digest recorded in the header
  Trace trace;              // seed/kind/start/schedule/profiles as written
  bool has_potential = false;
};

ParsedTrace parse_trace_csv(std::string_view text);

/// Minimal step plot of profile index vs activation step, one polyline per
/// trace. No plotting dependency.
std::string traces_svg(const std::vector<Trace>& traces, long profile_count);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace congame
