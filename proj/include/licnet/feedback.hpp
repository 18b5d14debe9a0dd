#pragma once

#include <string>

#include "licnet/grid.hpp"
#include "licnet/multihop.hpp"

namespace licnet {

// How a common message from transmitter i reaches both receivers.
enum class FeedbackRoute {
  Direct,           // the nonfeedback bit-pipe i -> 0
  CrossThenCommon,  // i sends privately to the other receiver, which feeds back to Tx-common
  OwnThenCommon,    // i sends privately to its own receiver, which feeds back to Tx-common
};

std::string to_string(FeedbackRoute route);

struct FeedbackGrid {
  IcParameterGrid base;
  double sigma10_fb_sq;
  double sigma20_fb_sq;
  FeedbackRoute route10;
  FeedbackRoute route20;

  // base with sigma10 and sigma20 replaced by their feedback values.
  IcParameterGrid substituted() const;
};

// Throws InvalidGrid.
FeedbackGrid feedback_ic_parameters(const IcParameterGrid& g);
// The same computation without validation, for layers that are checked elsewhere.
FeedbackGrid feedback_substitution(const IcParameterGrid& g);

// Covers both the full-feedback and the layered-feedback model.
IcParameterGrid feedback_layered_region_params(const LayeredNetwork& net);
SumCapacityResult feedback_sum_capacity(const LayeredNetwork& net);

ModeResult feedback_identical_sum_capacity(const IcParameterGrid& g);

struct SymmetricClassReport {
  IcParameterGrid grid;
  double sum_capacity;
  double feedback_sum_capacity;
  std::string mode;
  std::string feedback_mode;
  bool equal;  // within 1e-10
};

// Grid with lambda on the four private entries, mu on sigma10 and sigma20,
// sigma on sigma01 and sigma02. Throws InvalidSymmetricParameters if the
// grid violates the structural chains.
IcParameterGrid symmetric_grid(double lambda_sq, double mu_sq, double sigma_sq, double sigma00_sq);
SymmetricClassReport symmetric_feedback_check(double lambda_sq, double mu_sq, double sigma_sq,
                                      double sigma00_sq);

}  // namespace licnet
