#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "licnet/probability.hpp"

namespace licnet {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed1c0ffeeULL;

// Divergence transition matrix B = diag(1/sqrt(P_Y)) W diag(sqrt(P_X)).
// Its top singular triple is always (1, sqrt(P_Y), sqrt(P_X)).
class Dtm {
 public:
  Dtm(Eigen::MatrixXd matrix, ProbabilityVector input, ProbabilityVector output)
      : b_(std::move(matrix)), in_(std::move(input)), out_(std::move(output)) {}

  const Eigen::MatrixXd& matrix() const { return b_; }
  const ProbabilityVector& input_dist() const { return in_; }
  const ProbabilityVector& output_dist() const { return out_; }

  Eigen::VectorXd top_right() const { return in_.sqrt(); }
  Eigen::VectorXd top_left() const { return out_.sqrt(); }
  // B - sqrt(P_Y) sqrt(P_X)^T
  Eigen::MatrixXd deflated() const;

 private:
  Eigen::MatrixXd b_;
  ProbabilityVector in_;
  ProbabilityVector out_;
};

struct SingularSolution {
  double value;               // sigma, not squared
  PerturbationVector vector;  // unit, orthogonal to sqrt(P_X)
  bool degenerate;            // top deflated singular value is repeated
};

Dtm build_dtm(const ChannelMatrix& w, const ProbabilityVector& p_x);

// Largest singular value of the deflated DTM and its right singular vector.
SingularSolution second_singular(const Dtm& dtm);

struct TopSingular {
  double value;
  Eigen::VectorXd right;
  bool degenerate;
  int iterations;
};

// Top right singular pair of m restricted to the orthogonal complement of the
// (orthonormal) columns of `excluded`. Power iteration on the Gram matrix,
// started from a repeated-squaring estimate; seeded random restarts if the
// residual check fails.
TopSingular constrained_top_singular(const Eigen::MatrixXd& m, const Eigen::MatrixXd& excluded,
                                     std::uint64_t seed = kDefaultSeed);

// Orthonormal basis (columns) of the complement of span(excluded). `excluded`
// must have orthonormal columns.
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& excluded);

// Flip v so that its first entry with magnitude above 1e-9 is positive.
void apply_sign_convention(Eigen::VectorXd& v);

}  // namespace licnet
