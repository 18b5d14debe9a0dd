#include "licnet/dtm.hpp"

#include <cmath>
#include <random>

#include "licnet/error.hpp"
#include "licnet/tolerance.hpp"

namespace licnet {
namespace {

constexpr int kMaxIterations = 10000;
constexpr int kMaxRestarts = 5;
constexpr double kConvergence = 1e-12;

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
  int iterations;
  bool ok;
};

// Dominant eigenpair of a symmetric PSD matrix g whose range lies inside the
// subspace with projector p.
Eigenpair dominant(const Eigen::MatrixXd& g, const Eigen::MatrixXd& p, const Eigen::VectorXd& start) {
  const double scale = g.cwiseAbs().maxCoeff();
  Eigen::VectorXd x = p * start;
  if (x.norm() == 0.0) return {0.0, x, 0, false};
  x.normalize();
  double lambda = x.dot(g * x);
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    Eigen::VectorXd y = p * (g * x);
    const double n = y.norm();
    if (n == 0.0) return {0.0, x, it, true};
    x = y / n;
    const double next = x.dot(g * x);
    const bool settled = std::abs(next - lambda) <= kConvergence * scale;
    lambda = next;
    if (settled) break;
  }
  const double residual = (g * x - lambda * x).norm();
  return {lambda, x, it, residual <= 1e-6 * std::max(scale, 1e-300) || it < kMaxIterations};
}

// Repeated squaring of the normalized Gram matrix converges to (a multiple
// of) the projector onto its dominant eigenspace; one of its columns is a
// good start vector even when the leading eigenvalues are close.
Eigen::VectorXd squaring_start(const Eigen::MatrixXd& g) {
  Eigen::MatrixXd s = g / g.cwiseAbs().maxCoeff();
  for (int k = 0; k < 64; ++k) {
    Eigen::MatrixXd next = s * s;
    const double m = next.cwiseAbs().maxCoeff();
    if (m == 0.0) break;
    next /= m;
    const bool done = (next - s).cwiseAbs().maxCoeff() <= 1e-15;
    s = std::move(next);
    if (done) break;
  }
  Eigen::Index best = 0;
  s.colwise().norm().maxCoeff(&best);
  return s.col(best);
}

}  // namespace

Eigen::MatrixXd Dtm::deflated() const {
  return b_ - top_left() * top_right().transpose();
}

Dtm build_dtm(const ChannelMatrix& w, const ProbabilityVector& p_x) {
  if (w.cols() != p_x.alphabet_size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "channel has " + std::to_string(w.cols()) + " inputs, distribution has " +
                    std::to_string(p_x.alphabet_size()) + " symbols");
  }
  for (std::size_t i = 0; i < p_x.alphabet_size(); ++i) {
    if (p_x[i] <= 0.0) {
      throw Error(ErrorCode::ZeroProbabilitySymbol,
                  "input symbol " + std::to_string(i) + " has zero probability");
    }
  }
  ProbabilityVector p_y = apply_channel(w, p_x);
  for (std::size_t i = 0; i < p_y.alphabet_size(); ++i) {
    if (p_y[i] <= 0.0) {
      throw Error(ErrorCode::ZeroProbabilitySymbol,
                  "output symbol " + std::to_string(i) + " has zero probability");
    }
  }
  Eigen::MatrixXd b = p_y.sqrt().cwiseInverse().asDiagonal() * w.entries() *
                      p_x.sqrt().asDiagonal();
  return Dtm(std::move(b), p_x, std::move(p_y));
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& excluded) {
  const Eigen::Index n = excluded.rows();
  const Eigen::Index k = excluded.cols();
  if (k == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(excluded);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - k);
}

void apply_sign_convention(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

TopSingular constrained_top_singular(const Eigen::MatrixXd& m, const Eigen::MatrixXd& excluded,
                                     std::uint64_t seed) {
  const Eigen::Index n = m.cols();
  if (excluded.cols() > 0 && excluded.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "constraint directions do not match the matrix");
  }
  if (excluded.cols() >= n) {
    // No admissible direction (single-symbol alphabet).
    return {0.0, Eigen::VectorXd::Zero(n), false, 0};
  }
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - excluded * excluded.transpose();
  Eigen::MatrixXd g = proj * (m.transpose() * m) * proj;
  g = 0.5 * (g + g.transpose()).eval();
  const double scale = g.cwiseAbs().maxCoeff();
  const Eigen::Index free_dims = n - excluded.cols();

  if (!(scale > tol::kNoiseFloor)) {
    // Zero map on the constraint subspace: any allowed direction is optimal.
    Eigen::VectorXd v = orthonormal_complement(excluded).col(0);
    apply_sign_convention(v);
    return {0.0, v, free_dims > 1, 0};
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigenpair top{};
  Eigen::VectorXd start = squaring_start(g);
  int total = 0;
  for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
    top = dominant(g, proj, start);
    total += top.iterations;
    if (top.ok && top.vector.norm() > 0.5) break;
    start = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
    if (attempt == kMaxRestarts) {
      throw Error(ErrorCode::NumericalFailure,
                  "power iteration did not converge after " + std::to_string(total) +
                      " iterations");
    }
  }

  Eigen::VectorXd v = proj * top.vector;
  v.normalize();
  apply_sign_convention(v);

  bool degenerate = false;
  if (free_dims > 1) {
    Eigen::MatrixXd rest = g - top.value * v * v.transpose();
    rest = 0.5 * (rest + rest.transpose()).eval();
    const double rest_scale = rest.cwiseAbs().maxCoeff();
    double second = 0.0;
    if (rest_scale > 0.0) {
      Eigen::MatrixXd rest_proj = proj - v * v.transpose();
      Eigen::VectorXd s = squaring_start(rest);
      Eigenpair next = dominant(rest, rest_proj, s);
      if (next.vector.norm() == 0.0) {
        s = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
        next = dominant(rest, rest_proj, s);
      }
      second = next.value;
    }
    degenerate = top.value - second <= 1e-9 * std::max(1.0, top.value);
  }

  const double value = (m * v).norm();
  return {value * value < tol::kNoiseFloor ? 0.0 : value, v, degenerate, total};
}

SingularSolution second_singular(const Dtm& dtm) {
  const Eigen::VectorXd sx = dtm.top_right();
  Eigen::MatrixXd excluded = sx / sx.norm();
  const TopSingular top = constrained_top_singular(dtm.deflated(), excluded);
  if (top.value > 1.0 + tol::kInput) {
    throw Error(ErrorCode::NumericalFailure,
                "deflated singular value exceeds 1: " + std::to_string(top.value));
  }
  return {top.value, PerturbationVector(top.right, dtm.input_dist(), tol::kInput),
          top.degenerate};
}

}  // namespace licnet
