#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace licnet::oracle {

// max over unit x of min(x'A1x, x'A2x) for dimension 2 or 3.
//
// The maximizer is either a top eigenvector of one form at which that form
// is the smaller one, or lies on the ridge x'(A1 - A2)x = 0. In the
// eigenbasis of D = A1 - A2 the ridge is y = (+-sqrt(u_k)) with u on the
// segment {u >= 0, sum u = 1, d.u = 0}; each sign pattern is scanned densely
// along the segment and refined by golden section.
inline double max_min_quadratic(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  const Eigen::Index n = a1.rows();
  double best = 0.0;
  const auto consider_top = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& other) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::VectorXd x = es.eigenvectors().col(n - 1);
    if (x.dot(other * x) >= x.dot(a * x)) best = std::max(best, es.eigenvalues()(n - 1));
  };
  consider_top(a1, a2);
  consider_top(a2, a1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ds(a1 - a2);
  const Eigen::VectorXd d = ds.eigenvalues();
  const Eigen::MatrixXd v = ds.eigenvectors();
  const Eigen::MatrixXd b = v.transpose() * a1 * v;

  // Segment endpoints: the plane d.u = 0 meets the simplex edges and vertices.
  std::vector<Eigen::VectorXd> ends;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i) == 0.0) ends.push_back(Eigen::VectorXd::Unit(n, i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((d(i) < 0.0) != (d(j) < 0.0) && d(i) != 0.0 && d(j) != 0.0) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u(i) = d(j) / (d(j) - d(i));
        u(j) = 1.0 - u(i);
        ends.push_back(u);
      }
    }
  }
  if (ends.empty()) return best;
  Eigen::VectorXd lo = ends.front(), hi = ends.front();
  double widest = -1.0;
  for (const auto& p : ends) {
    for (const auto& q : ends) {
      if ((p - q).norm() > widest) {
        widest = (p - q).norm();
        lo = p;
        hi = q;
      }
    }
  }

  for (int signs = 0; signs < (1 << (n - 1)); ++signs) {
    const auto f = [&](double t) {
      const Eigen::VectorXd u = ((1.0 - t) * lo + t * hi).cwiseMax(0.0);
      Eigen::VectorXd y = u.cwiseSqrt();
      for (Eigen::Index k = 1; k < n; ++k) {
        if (signs & (1 << (k - 1))) y(k) = -y(k);
      }
      return y.dot(b * y);
    };
    constexpr int kSamples = 20000;
    int arg = 0;
    double top = f(0.0);
    for (int k = 1; k <= kSamples; ++k) {
      const double fk = f(static_cast<double>(k) / kSamples);
      if (fk > top) {
        top = fk;
        arg = k;
      }
    }
    double l = std::max(0.0, (arg - 1.0) / kSamples), h = std::min(1.0, (arg + 1.0) / kSamples);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    while (h - l > 1e-15) {
      const double m1 = h - r * (h - l), m2 = l + r * (h - l);
      if (f(m1) < f(m2)) {
        l = m1;
      } else {
        h = m2;
      }
    }
    best = std::max({best, top, f(0.5 * (l + h))});
  }
  return best;
}

}  // namespace licnet::oracle
