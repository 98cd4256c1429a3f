#pragma once

#include <map>
#include <string>
#include <vector>

#include "congame/congestion.hpp"

namespace congame {

/// Default relative tolerance for rank decisions and consistency tests.
inline constexpr double kDesignTol = 1e-9;

/// The stacked linear system B * Xi^T = P: row k is the b_row of profile k,
/// columns follow the flattened CostMatrix order.
struct DesignSystem {
  long rows = 0;       // l
  int cols = 0;        // m*n
  int facilities = 0;  // m
  int players = 0;     // n
  std::vector<double> b;  // row-major l x (m*n), 0/1 entries
  std::vector<double> p;  // length l
};

/// One capacity constraint on load vectors: coeffs . r(a) < threshold
/// (strict). A profile is desirable iff it satisfies every constraint.
struct Constraint {
  std::vector<double> coeffs;  // length m
  double threshold = 0;
};

enum class DesignKind { Exact, Inconsistent, LeastSquares };

struct DesignOutcome {
  DesignKind kind = DesignKind::Inconsistent;
  /// Designed costs. For Exact this is the minimum-norm solution (freedom > 0
  /// means other solutions exist); for Inconsistent it is the best
  /// least-squares candidate whose residual is reported.
  CostMatrix xi;
  PerfTable p0;            // realized potential B * xi^T (LeastSquares)
  double epsilon_hat = 0;  // max_a |P(a) - P0(a)| (LeastSquares)
  int rank = 0;
  int freedom = 0;    // nullspace dimension (Exact)
  double residual = 0;  // ‖B * xi^T - P‖_inf of the returned xi
  std::vector<int> kept_columns;  // 1-based basis columns (LeastSquares)
};

DesignSystem build_design_system(const FbsModel& model, const PerfTable& perf);

/// Solves B * Xi^T = P. Declares Exact iff the minimum-norm least-squares
/// solution has residual ‖.‖_inf <= tol * (1 + ‖P‖_inf).
DesignOutcome solve_exact(const DesignSystem& sys, double tol = kDesignTol);

/// Design with some facility-cost rows fixed (keys of `fixed`, each mapping to
/// its length-n cost row). Subtracts the fixed facilities' contribution from P
/// and solves for the remaining columns; the returned xi merges fixed and
/// solved rows.
DesignOutcome solve_partial(const FbsModel& model, const PerfTable& perf,
                            const std::map<int, std::vector<double>>& fixed,
                            double tol = kDesignTol);

struct ProfilePartition {
  std::vector<long> desirable;    // ascending profile indices
  std::vector<long> undesirable;
  std::vector<std::string> warnings;  // e.g. empty desirable set
};

/// Splits the profile set by the constraints (strict inequalities on load
/// vectors).
ProfilePartition desirable_profiles(const FbsModel& model,
                                    const std::vector<Constraint>& constraints);

struct RestrictedDesign {
  DesignOutcome outcome;
  ProfilePartition partition;
  /// Penalty constants: c_star = 10 * (1 + max |c_i(a)| over desirable a),
  /// p_star likewise for P. Chosen so the penalized argmin coincides with the
  /// restricted argmin.
  double c_star = 0;
  double p_star = 0;
  /// c_i(a) from the designed xi on desirable profiles, c_star elsewhere.
  std::vector<std::vector<double>> penalized_payoffs;
  /// P(a) on desirable profiles, p_star elsewhere.
  PerfTable penalized_perf;
};

/// Solves the design system restricted to the desirable profiles and, on
/// success, builds the penalized payoff and criterion tables. Throws
/// std::invalid_argument when no profile is desirable.
RestrictedDesign solve_restricted(const FbsModel& model, const PerfTable& perf,
                                  const std::vector<Constraint>& constraints,
                                  double tol = kDesignTol);

struct BasisColumns {
  std::vector<int> kept;   // 1-based column indices, ascending
  long rows = 0;
  std::vector<double> b0;  // row-major rows x kept.size()
};

/// Greedy leftmost scan keeping each column outside the span of the columns
/// kept so far; the result has full column rank equal to rank(B).
BasisColumns basis_columns(const DesignSystem& sys, double tol = kDesignTol);

/// Closest-game design: least-squares costs on the basis columns (zero on
/// dropped columns), the realized potential P0, and epsilon_hat = ‖P - P0‖_inf.
DesignOutcome least_squares_design(const FbsModel& model, const PerfTable& perf,
                                   double tol = kDesignTol);

}  // namespace congame
