#pragma once

#include <array>
#include <string>
#include <vector>

#include "licnet/tolerance.hpp"

namespace licnet {

using Grid3 = std::array<std::array<double, 3>, 3>;

// sigma_sq[i][j]: virtual transmitter i to virtual receiver j, index 0 being
// the common terminal.
struct IcParameterGrid {
  Grid3 sigma_sq{};

  double operator()(int i, int j) const { return sigma_sq[i][j]; }
  double& operator()(int i, int j) { return sigma_sq[i][j]; }

  // Relabel users 1 <-> 2 on both sides.
  IcParameterGrid swapped_users() const;

  bool operator==(const IcParameterGrid&) const = default;
};

struct GridViolation {
  int chain;  // 1..5, 0 for a negative or non-finite entry
  std::string description;
  double value;
  double lower;
  double upper;
};

// ab / (a + b); zero when both are zero.
double half_harmonic(double a, double b);

// Message label "ij".
std::string message_label(int i, int j);

// Checks the five sandwich chains between grid entries.
std::vector<GridViolation> validate_grid(const IcParameterGrid& g, double tolerance = tol::kGrid);

// Throws InvalidGrid naming the first violated chain.
void require_valid_grid(const IcParameterGrid& g, const std::string& context);

}  // namespace licnet
