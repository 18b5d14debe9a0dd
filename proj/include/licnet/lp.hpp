#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace licnet {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LpConstraint {
  std::vector<double> coefficients;
  Relation relation;
  double rhs;
};

// maximize objective . x  subject to constraints, x >= 0 and optional upper
// bounds on individual variables.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
  std::vector<std::optional<double>> upper_bounds;  // empty or one per variable

  std::size_t num_variables() const { return objective.size(); }
};

struct LpSolution {
  std::vector<double> x;
  double value;
  // Indices of constraints satisfied with equality (upper bounds are listed
  // after the constraints, offset by constraints.size()).
  std::vector<std::size_t> active;
  // One multiplier per constraint, then one per upper bound. Non-negative for
  // <= rows, non-positive for >= rows, free for equalities. Reduced costs
  // objective - A'y are <= 0 at the optimum and b'y equals the value.
  std::vector<double> duals;
};

// Dense two-phase simplex with Bland's rule (lowest-index entering variable,
// lowest-index leaving variable among ratio ties). Throws Infeasible or
// Unbounded.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace licnet
