#include "licnet/singlehop.hpp"

#include <algorithm>
#include <cmath>

#include "licnet/error.hpp"
#include "licnet/minmax.hpp"
#include "licnet/tolerance.hpp"

namespace licnet {
namespace {

Eigen::MatrixXd unit_column(const Eigen::VectorXd& v) { return v / v.norm(); }

Eigen::MatrixXd block_diagonal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Eigen::MatrixXd hstack(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

void require_same_output(const Dtm& a, const Dtm& b, const char* what) {
  if (a.output_dist().alphabet_size() != b.output_dist().alphabet_size()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": output alphabets differ");
  }
  const double diff = (a.output_dist().entries() - b.output_dist().entries()).cwiseAbs().maxCoeff();
  if (diff > tol::kInput) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": marginal channels induce different receiver distributions");
  }
}

void require_same_input(const Dtm& a, const Dtm& b, const char* what) {
  if (a.input_dist().alphabet_size() != b.input_dist().alphabet_size() ||
      (a.input_dist().entries() - b.input_dist().entries()).cwiseAbs().maxCoeff() > tol::kInput) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": input distributions differ");
  }
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& m, const Eigen::MatrixXd& q) {
  Eigen::MatrixXd a = q.transpose() * (m.transpose() * m) * q;
  return 0.5 * (a + a.transpose());
}

}  // namespace

P2pResult p2p_parameter(const ChannelMatrix& w, const ProbabilityVector& p_x) {
  SingularSolution s = second_singular(build_dtm(w, p_x));
  const double v = s.value;
  return {v * v, std::move(s)};
}

double time_share_rate(double sigma1_sq, double sigma2_sq) {
  return half_harmonic(sigma1_sq, sigma2_sq);
}

CommonParameter broadcast_common(const Dtm& d1, const Dtm& d2, std::uint64_t seed) {
  require_same_input(d1, d2, "broadcast common message");
  const Eigen::MatrixXd q = orthonormal_complement(unit_column(d1.top_right()));
  const MaxMinResult r =
      max_min_quadratic(gram(d1.deflated(), q), gram(d2.deflated(), q), seed);
  Eigen::VectorXd l = q * r.certificate;
  if (l.size() > 0 && l.norm() > 0.0) l.normalize();
  apply_sign_convention(l);
  return {r.value, PerturbationVector(l, d1.input_dist(), tol::kInput), r.gap, r.dual_bound};
}

CommonParameter stacked_common(const Dtm& d1, const Dtm& d2) {
  require_same_output(d1, d2, "stacked common message");
  const Eigen::MatrixXd excluded =
      block_diagonal(unit_column(d1.top_right()), unit_column(d2.top_right()));
  const TopSingular top = constrained_top_singular(hstack(d1.deflated(), d2.deflated()), excluded);
  const double s = top.value * top.value;
  return {s, PerturbationVector(top.right, {d1.input_dist(), d2.input_dist()}, tol::kInput), 0.0,
          s};
}

CommonParameter stacked_broadcast_common(const Dtm& d11, const Dtm& d21, const Dtm& d12,
                                         const Dtm& d22, std::uint64_t seed) {
  require_same_output(d11, d21, "receiver 1");
  require_same_output(d12, d22, "receiver 2");
  require_same_input(d11, d12, "transmitter 1");
  require_same_input(d21, d22, "transmitter 2");
  const Eigen::MatrixXd q = block_diagonal(orthonormal_complement(unit_column(d11.top_right())),
                                           orthonormal_complement(unit_column(d21.top_right())));
  const MaxMinResult r = max_min_quadratic(gram(hstack(d11.deflated(), d21.deflated()), q),
                                           gram(hstack(d12.deflated(), d22.deflated()), q), seed);
  Eigen::VectorXd l = q * r.certificate;
  if (l.size() > 0 && l.norm() > 0.0) l.normalize();
  apply_sign_convention(l);
  return {r.value, PerturbationVector(l, {d11.input_dist(), d21.input_dist()}, tol::kInput), r.gap,
          r.dual_bound};
}

BcParameters bc_parameters(const ChannelMatrix& w1, const ChannelMatrix& w2,
                           const ProbabilityVector& p_x) {
  if (w1.cols() != w2.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "broadcast branches have different input alphabets");
  }
  const Dtm d1 = build_dtm(w1, p_x);
  const Dtm d2 = build_dtm(w2, p_x);
  SingularSolution s1 = second_singular(d1);
  SingularSolution s2 = second_singular(d2);
  CommonParameter c = broadcast_common(d1, d2);
  return {s1.value * s1.value, s2.value * s2.value, c.sigma_sq,      std::move(s1.vector),
          std::move(s2.vector), std::move(c.l),     c.duality_gap,   c.dual_bound};
}

ChannelMatrix marginal_channel(const ChannelMatrix& joint, const ProbabilityVector& p1,
                               const ProbabilityVector& p2, int user) {
  const std::size_t n1 = p1.alphabet_size(), n2 = p2.alphabet_size();
  if (joint.cols() != n1 * n2) {
    throw Error(ErrorCode::DimensionMismatch,
                "joint channel has " + std::to_string(joint.cols()) + " columns, expected " +
                    std::to_string(n1 * n2) + " (|X1| * |X2|)");
  }
  if (user != 1 && user != 2) {
    throw Error(ErrorCode::InvalidArgument, "user must be 1 or 2");
  }
  const Eigen::MatrixXd& w = joint.entries();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(w.rows(), static_cast<Eigen::Index>(user == 1 ? n1 : n2));
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      const auto col = static_cast<Eigen::Index>(a * n2 + b);
      if (user == 1) {
        m.col(static_cast<Eigen::Index>(a)) += p2[b] * w.col(col);
      } else {
        m.col(static_cast<Eigen::Index>(b)) += p1[a] * w.col(col);
      }
    }
  }
  return ChannelMatrix::from(m);
}

MacParameters mac_parameters(const ChannelMatrix& joint, const ProbabilityVector& p1,
                             const ProbabilityVector& p2) {
  const Dtm d1 = build_dtm(marginal_channel(joint, p1, p2, 1), p1);
  const Dtm d2 = build_dtm(marginal_channel(joint, p1, p2, 2), p2);
  SingularSolution s1 = second_singular(d1);
  SingularSolution s2 = second_singular(d2);
  CommonParameter c = stacked_common(d1, d2);
  return {s1.value * s1.value, s2.value * s2.value, c.sigma_sq,
          std::move(s1.vector), std::move(s2.vector), std::move(c.l)};
}

IcChannels ic_marginals(const ChannelMatrix& joint_y1, const ChannelMatrix& joint_y2,
                        const ProbabilityVector& p1, const ProbabilityVector& p2) {
  return {marginal_channel(joint_y1, p1, p2, 1), marginal_channel(joint_y2, p1, p2, 1),
          marginal_channel(joint_y1, p1, p2, 2), marginal_channel(joint_y2, p1, p2, 2), p1, p2};
}

IcResult ic_parameters_detailed(const IcChannels& ic) {
  const Dtm d11 = build_dtm(ic.w11, ic.p1);
  const Dtm d12 = build_dtm(ic.w12, ic.p1);
  const Dtm d21 = build_dtm(ic.w21, ic.p2);
  const Dtm d22 = build_dtm(ic.w22, ic.p2);
  IcResult out{{}, {}, 0.0};
  auto put = [&](int i, int j, double s, PerturbationVector l, double gap) {
    out.grid(i, j) = s;
    out.certificates.emplace(message_label(i, j), std::move(l));
    out.max_duality_gap = std::max(out.max_duality_gap, gap);
  };
  const Dtm* direct[3][3] = {{nullptr, nullptr, nullptr}, {nullptr, &d11, &d12}, {nullptr, &d21, &d22}};
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      SingularSolution s = second_singular(*direct[i][j]);
      put(i, j, s.value * s.value, std::move(s.vector), 0.0);
    }
  }
  for (int i = 1; i <= 2; ++i) {
    CommonParameter c = broadcast_common(*direct[i][1], *direct[i][2]);
    put(i, 0, c.sigma_sq, std::move(c.l), c.duality_gap);
  }
  for (int j = 1; j <= 2; ++j) {
    CommonParameter c = stacked_common(*direct[1][j], *direct[2][j]);
    put(0, j, c.sigma_sq, std::move(c.l), 0.0);
  }
  CommonParameter c = stacked_broadcast_common(d11, d21, d12, d22);
  put(0, 0, c.sigma_sq, std::move(c.l), c.duality_gap);
  return out;
}

IcParameterGrid ic_parameters(const ChannelMatrix& w11, const ChannelMatrix& w12,
                              const ChannelMatrix& w21, const ChannelMatrix& w22,
                              const ProbabilityVector& p1, const ProbabilityVector& p2) {
  return ic_parameters_detailed({w11, w12, w21, w22, p1, p2}).grid;
}

}  // namespace licnet
