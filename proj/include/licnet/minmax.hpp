#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "licnet/dtm.hpp"

namespace licnet {

struct MaxMinResult {
  double value;        // min(x'A1x, x'A2x) at the certificate
  double dual_bound;   // min over t in [0,1] of lambda_max(t A1 + (1-t) A2)
  double gap;          // dual_bound - value
  double dual_t;       // minimizing t
  Eigen::VectorXd certificate;  // unit vector
};

// max over unit x of min(x'A1x, x'A2x) for symmetric PSD A1, A2.
// The dual is minimized by bisection on the slope of lambda_max; a primal
// vector is built from the top eigenspace at the dual optimum and then
// polished by projected supergradient ascent over 32 seeded restarts (restart 0 starts from the
// constructed vector). Throws SolverDidNotConverge if the final gap exceeds
// gap_tolerance.
MaxMinResult max_min_quadratic(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2,
                               std::uint64_t seed = kDefaultSeed, double gap_tolerance = 1e-6);

}  // namespace licnet
