#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "congame/design.hpp"

namespace congame {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

/// A system document: the model plus optional companion blocks.
///
/// Text format (line oriented, '#' starts a comment):
///
///   players: 3
///   facilities: 5
///   actions:
///     1: {1,2,3} {3,4,5}
///     2: {1,2,4} {3,5} {4,5}
///     3: {1,3,4} {2,5} {3,5}
///   perf:            # either a flat vector in canonical profile order...
///     33 27 24 ...
///   perf:            # ...or one profile per line, keyed by the choice tuple
///     1 1 1: 33
///   xi:              # m rows of n facility costs
///     11 2 4
///     ...
///   constraints:     # m coefficients, '<', threshold
///     1 0 0 0 0 < 3
///   fixed:           # facility id, then its n fixed costs
///     1: 11 2 4
///
/// Unknown section names are rejected.
struct SystemDocument {
  FbsModel model;  // carries the perf block when present
  std::optional<CostMatrix> xi;
  std::vector<Constraint> constraints;
  std::map<int, std::vector<double>> fixed;
};

SystemDocument parse_system_document(std::string_view text);
SystemDocument load_system_document(const std::string& path);

/// Canonical serialization: fixed section order, sorted facility ids,
/// shortest round-trip number formatting. parse(serialize(doc)) == doc.
std::string serialize_system_document(const SystemDocument& doc);

/// Stable 64-bit FNV-1a digest of the canonically serialized model (ignores
/// companion blocks), hex encoded. Used to pair trace files with models.
std::string model_digest(const FbsModel& model);

/// Shortest decimal that round-trips through binary64 ("33", "0.8315", ...).
std::string format_double(double value);

}  // namespace congame
