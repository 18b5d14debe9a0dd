#pragma once

#include <map>
#include <string>
#include <vector>

#include "licnet/grid.hpp"

namespace licnet {

// Keyed by message label: "0", "1", "2" for broadcast and multiple-access
// channels, "00" .. "22" for interference channels. std::map keeps labels in
// lexicographic order, which is also the tie-break order.
using ParameterSet = std::map<std::string, double>;  // label -> sigma^2
using RateTuple = std::map<std::string, double>;     // label -> rate
using Allocation = std::map<std::string, double>;    // label -> delta

struct SumRateResult {
  double value;
  Allocation allocation;
};

ParameterSet grid_parameters(const IcParameterGrid& g);
ParameterSet broadcast_parameters(double sigma1_sq, double sigma2_sq, double sigma0_sq);

// max sum_k mu_k delta_k sigma_k^2 subject to sum_k delta_k <= budget, solved
// with the simplex solver. Labels missing from mu get weight 0.
SumRateResult mu_sum_rate(const ParameterSet& params, const std::map<std::string, double>& mu,
                          double budget);

// Sum capacity of a single interference layer: the largest grid entry with
// its single-link allocation. Throws InvalidGrid for grids that fail
// validate_grid.
SumRateResult ic_sum_capacity(const IcParameterGrid& g);

// Origin followed by one vertex budget * sigma_k^2 per message axis. The
// region is the convex hull of these points, closed under coordinatewise
// decrease towards the origin.
std::vector<RateTuple> rate_region_vertices(const ParameterSet& params, double budget);

// Whether a non-negative rate tuple is achievable: sum_k R_k / sigma_k^2 <=
// budget, with R_k = 0 required wherever sigma_k^2 = 0.
bool region_contains(const ParameterSet& params, double budget, const RateTuple& rates,
                     double tolerance = 1e-9);

}  // namespace licnet
