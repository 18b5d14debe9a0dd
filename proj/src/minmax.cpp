#include "licnet/minmax.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "licnet/error.hpp"
#include "licnet/tolerance.hpp"

namespace licnet {
namespace {

constexpr int kRestarts = 32;
constexpr int kAscentSteps = 200;

double lambda_max(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t * a1 + (1.0 - t) * a2,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

struct Dual {
  double t;
  double value;
};

// Slope of lambda_max(t A1 + (1-t) A2) from a top eigenvector; lambda_max is
// convex in t, so the slope is non-decreasing.
double dual_slope(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t * a1 + (1.0 - t) * a2);
  const Eigen::VectorXd v = es.eigenvectors().col(a1.rows() - 1);
  return v.dot((a1 - a2) * v);
}

Dual minimize_dual(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  if (dual_slope(a1, a2, 0.0) >= 0.0) return {0.0, lambda_max(a1, a2, 0.0)};
  if (dual_slope(a1, a2, 1.0) <= 0.0) return {1.0, lambda_max(a1, a2, 1.0)};
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60 && hi - lo > 1e-16; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (dual_slope(a1, a2, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Dual best{0.5 * (lo + hi), lambda_max(a1, a2, 0.5 * (lo + hi))};
  for (double t : {0.0, 1.0}) {
    const double f = lambda_max(a1, a2, t);
    if (f < best.value) best = {t, f};
  }
  return best;
}

double objective(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, const Eigen::VectorXd& x) {
  return std::min(x.dot(a1 * x), x.dot(a2 * x));
}

// Unit vector in the top eigenspace of t A1 + (1-t) A2 on which both
// quadratics agree, when the eigenspace allows it.
Eigen::VectorXd construct_primal(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t * a1 + (1.0 - t) * a2);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  const double cut = top - 1e-9 * std::max(1.0, std::abs(top));
  std::vector<Eigen::Index> cluster;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) >= cut) cluster.push_back(i);
  }
  Eigen::MatrixXd v(a1.rows(), static_cast<Eigen::Index>(cluster.size()));
  for (std::size_t k = 0; k < cluster.size(); ++k) {
    v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cluster[k]);
  }
  Eigen::MatrixXd d = v.transpose() * (a1 - a2) * v;
  d = 0.5 * (d + d.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ds(d);
  const Eigen::Index last = d.rows() - 1;
  const double d_min = ds.eigenvalues()(0);
  const double d_max = ds.eigenvalues()(last);
  const Eigen::VectorXd e_min = ds.eigenvectors().col(0);
  const Eigen::VectorXd e_max = ds.eigenvectors().col(last);
  Eigen::VectorXd c;
  if (d_min >= 0.0) {
    c = e_min;
  } else if (d_max <= 0.0) {
    c = e_max;
  } else {
    const double cos2 = -d_min / (d_max - d_min);
    c = std::sqrt(cos2) * e_max + std::sqrt(1.0 - cos2) * e_min;
  }
  Eigen::VectorXd x = v * c;
  return x / x.norm();
}

Eigen::VectorXd ascend(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2, double t_dual,
                       Eigen::VectorXd x, double& best_value) {
  const double norm = std::max({a1.norm(), a2.norm(), 1e-300});
  Eigen::VectorXd best = x;
  best_value = objective(a1, a2, x);
  for (int k = 0; k < kAscentSteps; ++k) {
    const double q1 = x.dot(a1 * x);
    const double q2 = x.dot(a2 * x);
    Eigen::VectorXd g;
    const double tie = 1e-12 * norm;
    if (q1 < q2 - tie) {
      g = 2.0 * a1 * x;
    } else if (q2 < q1 - tie) {
      g = 2.0 * a2 * x;
    } else {
      g = 2.0 * (t_dual * a1 + (1.0 - t_dual) * a2) * x;
    }
    g -= g.dot(x) * x;
    if (g.norm() <= 1e-15 * norm) break;
    x += (0.5 / norm) / std::sqrt(1.0 + k) * g;
    x.normalize();
    const double f = objective(a1, a2, x);
    if (f > best_value) {
      best_value = f;
      best = x;
    }
  }
  return best;
}

}  // namespace

MaxMinResult max_min_quadratic(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2,
                               std::uint64_t seed, double gap_tolerance) {
  const Eigen::Index n = a1.rows();
  if (a1.cols() != n || a2.rows() != n || a2.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic forms must be square and equal-sized");
  }
  if (n == 0) return {0.0, 0.0, 0.0, 0.0, Eigen::VectorXd()};

  const Dual dual = minimize_dual(a1, a2);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd best;
  double best_value = -1.0;
  for (int r = 0; r < kRestarts; ++r) {
    Eigen::VectorXd start;
    if (r == 0) {
      start = construct_primal(a1, a2, dual.t);
    } else {
      start = Eigen::VectorXd::NullaryExpr(n, [&] { return normal(rng); });
      start.normalize();
    }
    double value = 0.0;
    Eigen::VectorXd x = ascend(a1, a2, dual.t, start, value);
    // Strict comparison keeps the lowest restart index on ties.
    if (value > best_value) {
      best_value = value;
      best = std::move(x);
    }
  }

  const double gap = dual.value - best_value;
  if (gap > gap_tolerance) {
    std::ostringstream os;
    os.precision(6);
    os << "max-min program: duality gap " << gap << " exceeds " << gap_tolerance;
    throw Error(ErrorCode::SolverDidNotConverge, os.str());
  }
  apply_sign_convention(best);
  if (best_value < tol::kNoiseFloor) best_value = 0.0;
  return {best_value, dual.value, gap, dual.t, best};
}

}  // namespace licnet
