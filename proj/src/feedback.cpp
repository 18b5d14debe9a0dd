#include "licnet/feedback.hpp"

#include <cmath>

#include "licnet/error.hpp"

namespace licnet {
namespace {

// Best of the direct link and the two feedback relays for common message i.
std::pair<double, FeedbackRoute> best_route(const IcParameterGrid& g, int i) {
  const int other = 3 - i;
  const double cross = half_harmonic(g(i, other), g(0, i));
  const double own = half_harmonic(g(i, i), g(0, other));
  std::pair<double, FeedbackRoute> best{g(i, 0), FeedbackRoute::Direct};
  if (cross > best.first) best = {cross, FeedbackRoute::CrossThenCommon};
  if (own > best.first) best = {own, FeedbackRoute::OwnThenCommon};
  return best;
}

}  // namespace

std::string to_string(FeedbackRoute route) {
  switch (route) {
    case FeedbackRoute::Direct: return "direct";
    case FeedbackRoute::CrossThenCommon: return "cross-then-common";
    case FeedbackRoute::OwnThenCommon: return "own-then-common";
  }
  return "unknown";
}

IcParameterGrid FeedbackGrid::substituted() const {
  IcParameterGrid g = base;
  g(1, 0) = sigma10_fb_sq;
  g(2, 0) = sigma20_fb_sq;
  return g;
}

FeedbackGrid feedback_substitution(const IcParameterGrid& g) {
  const auto [v10, r10] = best_route(g, 1);
  const auto [v20, r20] = best_route(g, 2);
  return {g, v10, v20, r10, r20};
}

FeedbackGrid feedback_ic_parameters(const IcParameterGrid& g) {
  require_valid_grid(g, "feedback_ic_parameters");
  return feedback_substitution(g);
}

namespace {

LayeredNetwork feedback_network(const LayeredNetwork& net) {
  validate_network(net);
  LayeredNetwork fb;
  fb.layers.reserve(net.size());
  for (const auto& layer : net.layers) fb.layers.push_back(feedback_substitution(layer).substituted());
  return fb;
}

}  // namespace

IcParameterGrid feedback_layered_region_params(const LayeredNetwork& net) {
  return layered_region_params(feedback_network(net));
}

SumCapacityResult feedback_sum_capacity(const LayeredNetwork& net) {
  return sum_capacity(feedback_network(net));
}

ModeResult feedback_identical_sum_capacity(const IcParameterGrid& g) {
  require_valid_grid(g, "feedback_identical_sum_capacity");
  return best_mode(feedback_substitution(g).substituted());
}

IcParameterGrid symmetric_grid(double lambda_sq, double mu_sq, double sigma_sq, double sigma00_sq) {
  IcParameterGrid g;
  g.sigma_sq = {{{sigma00_sq, sigma_sq, sigma_sq},
                 {mu_sq, lambda_sq, lambda_sq},
                 {mu_sq, lambda_sq, lambda_sq}}};
  const auto violations = validate_grid(g);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorCode::InvalidSymmetricParameters,
                "symmetric grid breaks chain " + std::to_string(v.chain) + ": " + v.description);
  }
  return g;
}

SymmetricClassReport symmetric_feedback_check(double lambda_sq, double mu_sq, double sigma_sq,
                                      double sigma00_sq) {
  const IcParameterGrid g = symmetric_grid(lambda_sq, mu_sq, sigma_sq, sigma00_sq);
  const ModeResult plain = identical_layer_sum_capacity(g);
  const ModeResult fb = feedback_identical_sum_capacity(g);
  return {g, plain.value, fb.value, plain.label, fb.label, std::abs(plain.value - fb.value) <= 1e-10};
}

}  // namespace licnet
