#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace licnet {

// Finite distribution. Entries are non-negative and sum to one.
class ProbabilityVector {
 public:
  // Checks the raw entries against tol::kInput, then rescales them so the sum
  // is one to machine precision.
  static ProbabilityVector from(const Eigen::VectorXd& raw, double tolerance);

  const Eigen::VectorXd& entries() const { return p_; }
  std::size_t alphabet_size() const { return static_cast<std::size_t>(p_.size()); }
  double operator[](std::size_t i) const { return p_(static_cast<Eigen::Index>(i)); }

  // Entrywise square root.
  Eigen::VectorXd sqrt() const { return p_.cwiseSqrt(); }
  bool full_support() const { return (p_.array() > 0.0).all(); }

 private:
  explicit ProbabilityVector(Eigen::VectorXd p) : p_(std::move(p)) {}
  Eigen::VectorXd p_;
};

// Column-stochastic W(y|x) with |Y| rows and |X| columns.
class ChannelMatrix {
 public:
  static ChannelMatrix from(const Eigen::MatrixXd& raw);
  static ChannelMatrix from_rows(const std::vector<std::vector<double>>& rows);

  const Eigen::MatrixXd& entries() const { return w_; }
  std::size_t rows() const { return static_cast<std::size_t>(w_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(w_.cols()); }

 private:
  explicit ChannelMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {}
  Eigen::MatrixXd w_;
};

// Direction L in which a conditional distribution leaves its reference, with
// J = [sqrt(P)] L. A stacked vector (one block per reference distribution)
// is used for multiple-access common messages; each block is orthogonal to
// the square root of its own reference.
class PerturbationVector {
 public:
  PerturbationVector(Eigen::VectorXd entries, std::vector<ProbabilityVector> references,
                     double tolerance);
  PerturbationVector(Eigen::VectorXd entries, ProbabilityVector reference, double tolerance);

  const Eigen::VectorXd& entries() const { return l_; }
  const std::vector<ProbabilityVector>& references() const { return refs_; }
  std::size_t size() const { return static_cast<std::size_t>(l_.size()); }
  double norm() const { return l_.norm(); }

  // Block of entries belonging to reference k.
  Eigen::VectorXd block(std::size_t k) const;
  // J = [sqrt(P)] L, blockwise.
  Eigen::VectorXd density() const;

 private:
  Eigen::VectorXd l_;
  std::vector<ProbabilityVector> refs_;
};

ProbabilityVector validate_distribution(std::span<const double> raw);
ProbabilityVector validate_distribution(const Eigen::VectorXd& raw);

ProbabilityVector apply_channel(const ChannelMatrix& w, const ProbabilityVector& p);

// D(p || q) in nats.
double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q);

// base + epsilon * [sqrt(base)] l.
ProbabilityVector perturb(const ProbabilityVector& base, const PerturbationVector& l,
                          double epsilon);

// Quadratic approximation 0.5 * epsilon^2 * |l|^2 of D(perturbed || base).
double local_kl_approx(const ProbabilityVector& base, const PerturbationVector& l,
                       double epsilon);

}  // namespace licnet
