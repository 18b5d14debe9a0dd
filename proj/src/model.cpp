#include "licnet/model.hpp"

#include <algorithm>
#include <cmath>

#include "licnet/error.hpp"
#include "licnet/lp.hpp"

namespace licnet {

ParameterSet grid_parameters(const IcParameterGrid& g) {
  ParameterSet p;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) p[message_label(i, j)] = g(i, j);
  }
  return p;
}

ParameterSet broadcast_parameters(double sigma1_sq, double sigma2_sq, double sigma0_sq) {
  return {{"0", sigma0_sq}, {"1", sigma1_sq}, {"2", sigma2_sq}};
}

SumRateResult mu_sum_rate(const ParameterSet& params, const std::map<std::string, double>& mu,
                          double budget) {
  if (params.empty()) throw Error(ErrorCode::EmptyList, "no messages to allocate");
  if (!(budget >= 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be non-negative");
  for (const auto& [label, w] : mu) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weight for " + label + " is negative");
    if (!params.count(label)) throw Error(ErrorCode::InvalidArgument, "unknown message label " + label);
  }
  LpProblem lp;
  std::vector<std::string> labels;
  for (const auto& [label, s] : params) {
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma^2 for " + label + " is negative");
    labels.push_back(label);
    const auto it = mu.find(label);
    lp.objective.push_back((it == mu.end() ? 0.0 : it->second) * s);
  }
  lp.constraints.push_back({std::vector<double>(labels.size(), 1.0), Relation::LessEqual, budget});
  const LpSolution sol = solve_lp(lp);
  SumRateResult out{sol.value, {}};
  for (std::size_t k = 0; k < labels.size(); ++k) out.allocation[labels[k]] = sol.x[k];
  return out;
}

SumRateResult ic_sum_capacity(const IcParameterGrid& g) {
  require_valid_grid(g, "ic_sum_capacity");
  const ParameterSet params = grid_parameters(g);
  std::map<std::string, double> ones;
  for (const auto& [label, s] : params) ones[label] = 1.0;
  SumRateResult r = mu_sum_rate(params, ones, 1.0);
  double largest = 0.0;
  for (const auto& [label, s] : params) largest = std::max(largest, s);
  const double common = std::max(g(0, 1), g(0, 2));
  if (std::abs(r.value - largest) > 1e-9 || std::abs(largest - common) > tol::kGrid) {
    throw Error(ErrorCode::NumericalFailure,
                "sum capacity disagrees with the largest transmitter-common parameter");
  }
  return r;
}

std::vector<RateTuple> rate_region_vertices(const ParameterSet& params, double budget) {
  RateTuple origin;
  for (const auto& [label, s] : params) origin[label] = 0.0;
  std::vector<RateTuple> out{origin};
  for (const auto& [label, s] : params) {
    RateTuple v = origin;
    v[label] = budget * s;
    out.push_back(std::move(v));
  }
  return out;
}

bool region_contains(const ParameterSet& params, double budget, const RateTuple& rates,
                     double tolerance) {
  double used = 0.0;
  for (const auto& [label, r] : rates) {
    const auto it = params.find(label);
    if (it == params.end()) throw Error(ErrorCode::InvalidArgument, "unknown message label " + label);
    if (r < -tolerance) return false;
    if (r <= tolerance) continue;
    if (it->second <= 0.0) return false;
    used += r / it->second;
  }
  return used <= budget + tolerance;
}

}  // namespace licnet
