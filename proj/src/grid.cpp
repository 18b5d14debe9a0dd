#include "licnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "licnet/error.hpp"

namespace licnet {
namespace {

constexpr int kSwap[3] = {0, 2, 1};

std::string entry(int i, int j) { return "sigma" + message_label(i, j) + "^2"; }

}  // namespace

IcParameterGrid IcParameterGrid::swapped_users() const {
  IcParameterGrid out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.sigma_sq[kSwap[i]][kSwap[j]] = sigma_sq[i][j];
  }
  return out;
}

double half_harmonic(double a, double b) {
  const double s = a + b;
  return s > 0.0 ? a * b / s : 0.0;
}

std::string message_label(int i, int j) { return std::to_string(i) + std::to_string(j); }

std::vector<GridViolation> validate_grid(const IcParameterGrid& g, double tolerance) {
  std::vector<GridViolation> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double v = g(i, j);
      if (!std::isfinite(v) || v < -tolerance) {
        out.push_back({0, entry(i, j) + " must be finite and non-negative", v, 0.0, INFINITY});
      }
    }
  }
  auto check = [&](int chain, int i, int j, double lower, double upper, const std::string& rule) {
    const double v = g(i, j);
    if (v < lower - tolerance || v > upper + tolerance) {
      out.push_back({chain, "chain " + std::to_string(chain) + ": " + entry(i, j) + " " + rule,
                     v, lower, upper});
    }
  };
  check(1, 1, 0, half_harmonic(g(1, 1), g(1, 2)), std::min(g(1, 1), g(1, 2)),
        "must lie between H(sigma11^2, sigma12^2) and min(sigma11^2, sigma12^2)");
  check(2, 2, 0, half_harmonic(g(2, 1), g(2, 2)), std::min(g(2, 1), g(2, 2)),
        "must lie between H(sigma21^2, sigma22^2) and min(sigma21^2, sigma22^2)");
  check(3, 0, 0, half_harmonic(g(0, 1), g(0, 2)), std::min(g(0, 1), g(0, 2)),
        "must lie between H(sigma01^2, sigma02^2) and min(sigma01^2, sigma02^2)");
  check(4, 0, 1, std::max(g(1, 1), g(2, 1)), g(1, 1) + g(2, 1),
        "must lie between max(sigma11^2, sigma21^2) and sigma11^2 + sigma21^2");
  check(5, 0, 2, std::max(g(1, 2), g(2, 2)), g(1, 2) + g(2, 2),
        "must lie between max(sigma12^2, sigma22^2) and sigma12^2 + sigma22^2");
  return out;
}

void require_valid_grid(const IcParameterGrid& g, const std::string& context) {
  const auto violations = validate_grid(g);
  if (violations.empty()) return;
  const auto& v = violations.front();
  std::ostringstream os;
  os.precision(12);
  os << context << ": " << v.description << " (value " << v.value << ", bounds [" << v.lower
     << ", " << v.upper << "])";
  throw Error(ErrorCode::InvalidGrid, os.str());
}

}  // namespace licnet
