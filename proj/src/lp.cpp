#include "licnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "licnet/error.hpp"

namespace licnet {
namespace {

constexpr double kPivot = 1e-11;
constexpr double kCost = 1e-11;
constexpr int kMaxPivots = 50000;

struct Row {
  std::vector<double> a;
  Relation rel;
  double b;
  double sign;  // +1 or -1, applied so that b >= 0
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, std::vector<double>(cols + 1, 0.0)), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  double rhs(std::size_t r) const { return t_[r][n_]; }
  double& rhs(std::size_t r) { return t_[r][n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = t_[r][c];
    for (double& v : t_[r]) v /= p;
    t_[r][c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
      t_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  // Maximizes cost . x over the current basis. Columns with allowed[c] false
  // never enter. Returns false if unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = n_;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!allowed[c]) continue;
        double reduced = cost[c];
        for (std::size_t r = 0; r < m_; ++r) reduced -= cost[basis_[r]] * t_[r][c];
        if (reduced > kCost) {
          enter = c;
          break;
        }
      }
      if (enter == n_) return true;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][enter] <= kPivot) continue;
        const double ratio = std::max(t_[r][n_], 0.0) / t_[r][enter];
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::NumericalFailure, "simplex exceeded the pivot limit");
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  const std::size_t n = problem.num_variables();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "LP has no variables");
  if (!problem.upper_bounds.empty() && problem.upper_bounds.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "upper bounds must cover every variable");
  }

  std::vector<Row> rows;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& c = problem.constraints[i];
    if (c.coefficients.size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "constraint " + std::to_string(i) + " has " + std::to_string(c.coefficients.size()) +
                      " coefficients, expected " + std::to_string(n));
    }
    rows.push_back({c.coefficients, c.relation, c.rhs, 1.0});
  }
  for (std::size_t j = 0; j < problem.upper_bounds.size(); ++j) {
    if (!problem.upper_bounds[j]) continue;
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    rows.push_back({a, Relation::LessEqual, *problem.upper_bounds[j], 1.0});
  }
  // Map bound rows back to their position in the dual vector.
  std::vector<std::size_t> dual_slot;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) dual_slot.push_back(i);
  for (std::size_t j = 0; j < problem.upper_bounds.size(); ++j) {
    if (problem.upper_bounds[j]) dual_slot.push_back(problem.constraints.size() + j);
  }
  const std::size_t n_duals = problem.constraints.size() + problem.upper_bounds.size();

  for (auto& r : rows) {
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.sign = -1.0;
      if (r.rel == Relation::LessEqual) {
        r.rel = Relation::GreaterEqual;
      } else if (r.rel == Relation::GreaterEqual) {
        r.rel = Relation::LessEqual;
      }
    }
  }

  // Columns: originals, one slack/surplus per inequality, one artificial per
  // >= or = row.
  const std::size_t m = rows.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++n_slack;
    if (r.rel != Relation::LessEqual) ++n_art;
  }
  const std::size_t total = n + n_slack + n_art;
  const std::size_t art_begin = n + n_slack;

  // Standard-form matrix, kept for the final basis solves.
  Eigen::MatrixXd a_std = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(total));
  Eigen::VectorXd b_std(static_cast<Eigen::Index>(m));
  Tableau tab(m, total);
  std::size_t slack = n, art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) a_std(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r.a[j];
    b_std(static_cast<Eigen::Index>(i)) = r.b;
    if (r.rel == Relation::LessEqual) {
      a_std(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(slack)) = 1.0;
      tab.basis()[i] = slack++;
    } else {
      if (r.rel == Relation::GreaterEqual) {
        a_std(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(slack++)) = -1.0;
      }
      a_std(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(art)) = 1.0;
      tab.basis()[i] = art++;
    }
    for (std::size_t j = 0; j < total; ++j) tab.at(i, j) = a_std(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    tab.rhs(i) = r.b;
  }

  std::vector<bool> allowed(total, true);
  // origin[r]: index into `rows` of tableau row r (redundant rows get dropped).
  std::vector<std::size_t> origin(m);
  for (std::size_t i = 0; i < m; ++i) origin[i] = i;
  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = art_begin; j < total; ++j) phase1[j] = -1.0;
    tab.optimize(phase1, allowed);
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < tab.rows(); ++r) {
      if (tab.basis()[r] >= art_begin) infeasibility += tab.rhs(r);
    }
    double scale = 1.0;
    for (const auto& r : rows) scale = std::max(scale, std::abs(r.b));
    if (infeasibility > 1e-9 * scale) {
      throw Error(ErrorCode::Infeasible, "LP is infeasible (phase-one residual " +
                                             std::to_string(infeasibility) + ")");
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant equalities.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < art_begin) {
        ++r;
        continue;
      }
      std::size_t c = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(r, j)) > kPivot) {
          c = j;
          break;
        }
      }
      if (c < art_begin) {
        tab.pivot(r, c);
        ++r;
      } else {
        tab.drop_row(r);
        origin.erase(origin.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (std::size_t j = art_begin; j < total; ++j) allowed[j] = false;
  }

  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
  if (!tab.optimize(cost, allowed)) throw Error(ErrorCode::Unbounded, "LP is unbounded");

  // Re-solve the final basis on the original data: x_B = B^-1 b, B'y = c_B.
  const auto mb = static_cast<Eigen::Index>(tab.rows());
  Eigen::MatrixXd basis(mb, mb);
  Eigen::VectorXd rhs(mb), cb(mb);
  for (Eigen::Index r = 0; r < mb; ++r) {
    const auto row = static_cast<Eigen::Index>(origin[static_cast<std::size_t>(r)]);
    rhs(r) = b_std(row);
    for (Eigen::Index k = 0; k < mb; ++k) {
      basis(r, k) = a_std(row, static_cast<Eigen::Index>(tab.basis()[static_cast<std::size_t>(k)]));
    }
    const std::size_t col = tab.basis()[static_cast<std::size_t>(r)];
    cb(r) = col < n ? problem.objective[col] : 0.0;
  }
  LpSolution sol;
  sol.x.assign(n, 0.0);
  sol.duals.assign(n_duals, 0.0);
  if (mb > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    const Eigen::VectorXd xb = lu.solve(rhs);
    const Eigen::VectorXd yb = lu.transpose().solve(cb);
    for (Eigen::Index k = 0; k < mb; ++k) {
      const std::size_t col = tab.basis()[static_cast<std::size_t>(k)];
      if (col < n) sol.x[col] = std::max(0.0, xb(k));
    }
    for (Eigen::Index r = 0; r < mb; ++r) {
      const std::size_t row = origin[static_cast<std::size_t>(r)];
      sol.duals[dual_slot[row]] = rows[row].sign * yb(r);
    }
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  for (std::size_t i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += rows[i].a[j] * sol.x[j];
    if (std::abs(lhs - rows[i].b) <= 1e-9 * std::max(1.0, std::abs(rows[i].b))) {
      sol.active.push_back(dual_slot[i]);
    }
  }
  return sol;
}

}  // namespace licnet
