#include "licnet/probability.hpp"

#include <cmath>
#include <sstream>

#include "licnet/error.hpp"
#include "licnet/tolerance.hpp"

namespace licnet {
namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Clamps round-off negatives and rescales to unit sum; throws on anything
// outside the tolerance.
Eigen::VectorXd checked_simplex(const Eigen::VectorXd& raw, double tolerance,
                                const std::string& what) {
  if (raw.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, what + " is empty");
  }
  Eigen::VectorXd v = raw;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i))) {
      throw Error(ErrorCode::InvalidArgument, what + " entry " + std::to_string(i) +
                                                   " is not finite");
    }
    if (v(i) < -tolerance) {
      throw Error(ErrorCode::NegativeEntry, what + " entry " + std::to_string(i) + " is " +
                                                fmt_double(v(i)));
    }
    if (v(i) < 0.0) v(i) = 0.0;
  }
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > tolerance) {
    throw Error(ErrorCode::SumNotOne, what + " sums to " + fmt_double(sum) +
                                          " (deviation " + fmt_double(sum - 1.0) + ")");
  }
  return v / sum;
}

}  // namespace

ProbabilityVector ProbabilityVector::from(const Eigen::VectorXd& raw, double tolerance) {
  return ProbabilityVector(checked_simplex(raw, tolerance, "distribution"));
}

ChannelMatrix ChannelMatrix::from(const Eigen::MatrixXd& raw) {
  if (raw.rows() == 0 || raw.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "channel matrix has an empty dimension");
  }
  Eigen::MatrixXd w(raw.rows(), raw.cols());
  for (Eigen::Index x = 0; x < raw.cols(); ++x) {
    w.col(x) = checked_simplex(raw.col(x), tol::kInput,
                               "channel column " + std::to_string(x));
  }
  return ChannelMatrix(std::move(w));
}

ChannelMatrix ChannelMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorCode::DimensionMismatch, "channel matrix has an empty dimension");
  }
  Eigen::MatrixXd w(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "channel row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " entries, expected " + std::to_string(rows.front().size()));
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return from(w);
}

PerturbationVector::PerturbationVector(Eigen::VectorXd entries,
                                       std::vector<ProbabilityVector> references,
                                       double tolerance)
    : l_(std::move(entries)), refs_(std::move(references)) {
  std::size_t total = 0;
  for (const auto& r : refs_) total += r.alphabet_size();
  if (refs_.empty() || total != size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "perturbation has " + std::to_string(size()) + " entries, references cover " +
                    std::to_string(total));
  }
  if (l_.norm() > 1.0 + tolerance) {
    throw Error(ErrorCode::InvalidPerturbation,
                "perturbation norm " + fmt_double(l_.norm()) + " exceeds 1");
  }
  for (std::size_t k = 0; k < refs_.size(); ++k) {
    const double ip = block(k).dot(refs_[k].sqrt());
    if (std::abs(ip) > tolerance) {
      throw Error(ErrorCode::InvalidPerturbation,
                  "perturbation block " + std::to_string(k) +
                      " is not orthogonal to sqrt(reference): inner product " + fmt_double(ip));
    }
  }
}

PerturbationVector::PerturbationVector(Eigen::VectorXd entries, ProbabilityVector reference,
                                       double tolerance)
    : PerturbationVector(std::move(entries), std::vector<ProbabilityVector>{std::move(reference)},
                         tolerance) {}

Eigen::VectorXd PerturbationVector::block(std::size_t k) const {
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < k; ++i) offset += static_cast<Eigen::Index>(refs_[i].alphabet_size());
  return l_.segment(offset, static_cast<Eigen::Index>(refs_.at(k).alphabet_size()));
}

Eigen::VectorXd PerturbationVector::density() const {
  Eigen::VectorXd j(l_.size());
  Eigen::Index offset = 0;
  for (const auto& r : refs_) {
    const auto n = static_cast<Eigen::Index>(r.alphabet_size());
    j.segment(offset, n) = r.sqrt().cwiseProduct(l_.segment(offset, n));
    offset += n;
  }
  return j;
}

ProbabilityVector validate_distribution(std::span<const double> raw) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) v(static_cast<Eigen::Index>(i)) = raw[i];
  return ProbabilityVector::from(v, tol::kInput);
}

ProbabilityVector validate_distribution(const Eigen::VectorXd& raw) {
  return ProbabilityVector::from(raw, tol::kInput);
}

ProbabilityVector apply_channel(const ChannelMatrix& w, const ProbabilityVector& p) {
  if (w.cols() != p.alphabet_size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "channel has " + std::to_string(w.cols()) + " inputs, distribution has " +
                    std::to_string(p.alphabet_size()) + " symbols");
  }
  return ProbabilityVector::from(w.entries() * p.entries(), tol::kInternal);
}

double kl_divergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.alphabet_size() != q.alphabet_size()) {
    throw Error(ErrorCode::DimensionMismatch, "distributions have different alphabet sizes");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.alphabet_size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw Error(ErrorCode::SupportMismatch,
                  "q(" + std::to_string(i) + ") = 0 where p(" + std::to_string(i) + ") > 0");
    }
    d += p[i] * std::log(p[i] / q[i]);
  }
  // Round-off can push an exact zero slightly negative.
  return d < 0.0 ? 0.0 : d;
}

ProbabilityVector perturb(const ProbabilityVector& base, const PerturbationVector& l,
                          double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  }
  if (l.references().size() != 1 || l.size() != base.alphabet_size()) {
    throw Error(ErrorCode::DimensionMismatch, "perturbation does not match the base alphabet");
  }
  const Eigen::VectorXd q = base.entries() + epsilon * base.sqrt().cwiseProduct(l.entries());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (q(i) < -tol::kInternal) {
      throw Error(ErrorCode::InvalidPerturbation,
                  "perturbed entry " + std::to_string(i) + " is " + fmt_double(q(i)));
    }
  }
  return ProbabilityVector::from(q, tol::kInput);
}

double local_kl_approx(const ProbabilityVector& base, const PerturbationVector& l,
                       double epsilon) {
  perturb(base, l, epsilon);
  return 0.5 * epsilon * epsilon * l.entries().squaredNorm();
}

}  // namespace licnet
