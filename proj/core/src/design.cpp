#include "congame/design.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace congame {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

struct MinNormSolution {
  VectorXd x;
  int rank = 0;
  double residual_inf = 0;
};

// Minimum-norm least-squares solution of A x = b with a relative rank
// threshold.
MinNormSolution min_norm_solve(const MatrixXd& a, const VectorXd& b, double tol) {
  MinNormSolution out;
  if (a.cols() == 0) {
    out.x = VectorXd();
    out.rank = 0;
    out.residual_inf = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a.rows(), a.cols());
  cod.setThreshold(tol);
  cod.compute(a);
  out.x = cod.solve(b);
  out.rank = static_cast<int>(cod.rank());
  out.residual_inf = (a * out.x - b).cwiseAbs().maxCoeff();
  return out;
}

double inf_norm(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

CostMatrix cost_matrix_from_vector(int facilities, int players, const VectorXd& v) {
  return CostMatrix::from_flat(facilities, players,
                               std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

DesignSystem build_design_system(const FbsModel& model, const PerfTable& perf) {
  if (static_cast<long>(perf.size()) != model.profile_count())
    throw std::invalid_argument("perf table has " + std::to_string(perf.size()) +
                                " entries, expected " + std::to_string(model.profile_count()));
  DesignSystem sys;
  sys.rows = model.profile_count();
  sys.facilities = model.facilities();
  sys.players = model.players();
  sys.cols = model.facilities() * model.players();
  sys.b.reserve(static_cast<std::size_t>(sys.rows) * sys.cols);
  for (const Profile& p : enumerate_profiles(model))
    for (std::uint8_t bit : b_row(model, p)) sys.b.push_back(static_cast<double>(bit));
  sys.p = perf;
  return sys;
}

DesignOutcome solve_exact(const DesignSystem& sys, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be > 0");
  RowMajorMap b(sys.b.data(), sys.rows, sys.cols);
  const VectorXd p = Eigen::Map<const VectorXd>(sys.p.data(), sys.p.size());

  const MinNormSolution sol = min_norm_solve(b, p, tol);
  DesignOutcome out;
  out.xi = cost_matrix_from_vector(sys.facilities, sys.players, sol.x);
  out.rank = sol.rank;
  out.freedom = sys.cols - sol.rank;
  out.residual = sol.residual_inf;
  out.kind = sol.residual_inf <= tol * (1.0 + inf_norm(p)) ? DesignKind::Exact
                                                           : DesignKind::Inconsistent;
  return out;
}

DesignOutcome solve_partial(const FbsModel& model, const PerfTable& perf,
                            const std::map<int, std::vector<double>>& fixed, double tol) {
  const int m = model.facilities();
  const int n = model.players();
  for (const auto& [facility, row] : fixed) {
    if (facility < 1 || facility > m)
      throw std::invalid_argument("fixed facility id " + std::to_string(facility) +
                                  " outside 1.." + std::to_string(m));
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("fixed cost row for facility " + std::to_string(facility) +
                                  " must have " + std::to_string(n) + " entries");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("fixed cost entries must be finite");
  }

  const DesignSystem sys = build_design_system(model, perf);
  RowMajorMap b(sys.b.data(), sys.rows, sys.cols);
  const VectorXd p = Eigen::Map<const VectorXd>(sys.p.data(), sys.p.size());

  std::vector<int> designable;  // 0-based facility ids
  for (int j = 0; j < m; ++j)
    if (!fixed.count(j + 1)) designable.push_back(j);

  // rhs = P minus the fixed facilities' contribution
  VectorXd rhs = p;
  for (const auto& [facility, row] : fixed) {
    const int base = (facility - 1) * n;
    for (int k = 0; k < n; ++k) rhs -= b.col(base + k) * row[k];
  }

  MatrixXd reduced(sys.rows, static_cast<long>(designable.size()) * n);
  for (std::size_t d = 0; d < designable.size(); ++d)
    reduced.middleCols(static_cast<long>(d) * n, n) = b.middleCols(designable[d] * n, n);

  const MinNormSolution sol = min_norm_solve(reduced, rhs, tol);

  VectorXd merged(sys.cols);
  for (const auto& [facility, row] : fixed)
    for (int k = 0; k < n; ++k) merged((facility - 1) * n + k) = row[k];
  for (std::size_t d = 0; d < designable.size(); ++d)
    for (int k = 0; k < n; ++k)
      merged(designable[d] * n + k) = sol.x(static_cast<long>(d) * n + k);

  DesignOutcome out;
  out.xi = cost_matrix_from_vector(m, n, merged);
  out.rank = sol.rank;
  out.freedom = static_cast<int>(reduced.cols()) - sol.rank;
  out.residual = sol.residual_inf;
  out.kind = sol.residual_inf <= tol * (1.0 + inf_norm(rhs)) ? DesignKind::Exact
                                                             : DesignKind::Inconsistent;
  return out;
}

ProfilePartition desirable_profiles(const FbsModel& model,
                                    const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints) {
    if (static_cast<int>(c.coeffs.size()) != model.facilities())
      throw std::invalid_argument("constraint needs one coefficient per facility");
    for (double k : c.coeffs)
      if (!std::isfinite(k)) throw std::invalid_argument("constraint coefficients must be finite");
  }
  ProfilePartition out;
  for (const Profile& p : enumerate_profiles(model)) {
    const std::vector<int> r = load_vector(model, p);
    bool ok = true;
    for (const auto& c : constraints) {
      double lhs = 0.0;
      for (int j = 0; j < model.facilities(); ++j) lhs += c.coeffs[j] * r[j];
      if (!(lhs < c.threshold)) {
        ok = false;
        break;
      }
    }
    (ok ? out.desirable : out.undesirable).push_back(p.index);
  }
  if (out.desirable.empty() && !constraints.empty())
    out.warnings.push_back("constraints admit no profile; the restricted system is empty");
  return out;
}

RestrictedDesign solve_restricted(const FbsModel& model, const PerfTable& perf,
                                  const std::vector<Constraint>& constraints, double tol) {
  if (static_cast<long>(perf.size()) != model.profile_count())
    throw std::invalid_argument("perf table length mismatch");

  RestrictedDesign out;
  out.partition = desirable_profiles(model, constraints);
  if (out.partition.desirable.empty())
    throw std::invalid_argument("no desirable profile satisfies the constraints");

  const DesignSystem full = build_design_system(model, perf);
  const long rows = static_cast<long>(out.partition.desirable.size());
  MatrixXd b(rows, full.cols);
  VectorXd p(rows);
  for (long r = 0; r < rows; ++r) {
    const long k = out.partition.desirable[r];
    for (int c = 0; c < full.cols; ++c)
      b(r, c) = full.b[static_cast<std::size_t>(k - 1) * full.cols + c];
    p(r) = perf[k - 1];
  }

  const MinNormSolution sol = min_norm_solve(b, p, tol);
  out.outcome.xi = cost_matrix_from_vector(full.facilities, full.players, sol.x);
  out.outcome.rank = sol.rank;
  out.outcome.freedom = full.cols - sol.rank;
  out.outcome.residual = sol.residual_inf;
  out.outcome.kind = sol.residual_inf <= tol * (1.0 + inf_norm(p)) ? DesignKind::Exact
                                                                   : DesignKind::Inconsistent;
  if (out.outcome.kind != DesignKind::Exact) return out;

  const auto costs = payoff_table(model, out.outcome.xi);
  double max_cost = 0.0;
  double max_perf = 0.0;
  for (long k : out.partition.desirable) {
    max_perf = std::max(max_perf, std::abs(perf[k - 1]));
    for (int i = 0; i < model.players(); ++i)
      max_cost = std::max(max_cost, std::abs(costs[i][k - 1]));
  }
  out.c_star = 10.0 * (1.0 + max_cost);
  out.p_star = 10.0 * (1.0 + max_perf);

  out.penalized_perf.assign(model.profile_count(), out.p_star);
  out.penalized_payoffs.assign(model.players(),
                               std::vector<double>(model.profile_count(), out.c_star));
  for (long k : out.partition.desirable) {
    out.penalized_perf[k - 1] = perf[k - 1];
    for (int i = 0; i < model.players(); ++i) out.penalized_payoffs[i][k - 1] = costs[i][k - 1];
  }
  return out;
}

BasisColumns basis_columns(const DesignSystem& sys, double tol) {
  RowMajorMap b(sys.b.data(), sys.rows, sys.cols);
  BasisColumns out;
  out.rows = sys.rows;

  MatrixXd q(sys.rows, 0);
  for (int c = 0; c < sys.cols; ++c) {
    VectorXd col = b.col(c);
    // two projection passes keep the basis orthonormal near dependence
    VectorXd resid = col - q * (q.transpose() * col);
    resid -= q * (q.transpose() * resid);
    const double scale = std::max(1.0, col.norm());
    if (resid.norm() > tol * scale) {
      out.kept.push_back(c + 1);
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = resid / resid.norm();
    }
  }

  out.b0.reserve(static_cast<std::size_t>(sys.rows) * out.kept.size());
  for (long r = 0; r < sys.rows; ++r)
    for (int c : out.kept)
      out.b0.push_back(sys.b[static_cast<std::size_t>(r) * sys.cols + (c - 1)]);
  return out;
}

DesignOutcome least_squares_design(const FbsModel& model, const PerfTable& perf, double tol) {
  const DesignSystem sys = build_design_system(model, perf);
  const BasisColumns basis = basis_columns(sys, tol);

  const VectorXd p = Eigen::Map<const VectorXd>(sys.p.data(), sys.p.size());
  VectorXd xi = VectorXd::Zero(sys.cols);
  if (!basis.kept.empty()) {  // an all-zero B projects everything to zero
    RowMajorMap b0(basis.b0.data(), basis.rows, static_cast<long>(basis.kept.size()));
    const VectorXd x0 = b0.colPivHouseholderQr().solve(p);
    for (std::size_t i = 0; i < basis.kept.size(); ++i) xi(basis.kept[i] - 1) = x0(i);
  }

  RowMajorMap b(sys.b.data(), sys.rows, sys.cols);
  const VectorXd p0 = b * xi;

  DesignOutcome out;
  out.kind = DesignKind::LeastSquares;
  out.xi = cost_matrix_from_vector(sys.facilities, sys.players, xi);
  out.p0.assign(p0.data(), p0.data() + p0.size());
  out.epsilon_hat = inf_norm(p - p0);
  out.residual = out.epsilon_hat;
  out.rank = static_cast<int>(basis.kept.size());
  out.freedom = 0;
  out.kept_columns = basis.kept;
  return out;
}

}  // namespace congame
