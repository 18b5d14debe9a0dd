#include <cmath>

#include <gtest/gtest.h>

#include "licnet/error.hpp"
#include "licnet/probability.hpp"
#include "support/generators.hpp"

using namespace licnet;
using namespace licnet::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Distribution, RejectsNegativeAndUnnormalized) {
  EXPECT_EQ(code_of([] { validate_distribution(Eigen::Vector3d(0.5, 0.6, -0.1)); }), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of([] { validate_distribution(Eigen::Vector2d(0.5, 0.6)); }), ErrorCode::SumNotOne);
}

TEST(Distribution, RenormalizesWithinTolerance) {
  const auto p = validate_distribution(Eigen::Vector2d(0.5 + 4e-10, 0.5));
  EXPECT_NEAR(p.entries().sum(), 1.0, 1e-15);
}

TEST(Channel, ColumnsMustBeDistributions) {
  EXPECT_EQ(code_of([] { ChannelMatrix::from_rows({{0.5, 0.2}, {0.4, 0.8}}); }), ErrorCode::SumNotOne);
  EXPECT_EQ(code_of([] { ChannelMatrix::from_rows({{1.1, 0.2}, {-0.1, 0.8}}); }), ErrorCode::NegativeEntry);
  const auto w = ChannelMatrix::from_rows({{0.9, 0.2}, {0.1, 0.8}});
  const auto out = apply_channel(w, validate_distribution(Eigen::Vector2d(0.5, 0.5)));
  EXPECT_NEAR(out[0], 0.55, 1e-15);
  EXPECT_NEAR(out[1], 0.45, 1e-15);
}

TEST(Kl, ZeroOnlyAtEqualityAndSupportChecked) {
  const auto p = validate_distribution(Eigen::Vector2d(0.3, 0.7));
  const auto q = validate_distribution(Eigen::Vector2d(0.5, 0.5));
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  EXPECT_NEAR(kl_divergence(p, q), 0.3 * std::log(0.6) + 0.7 * std::log(1.4), 1e-15);
  const auto r = validate_distribution(Eigen::Vector2d(1.0, 0.0));
  EXPECT_EQ(code_of([&] { kl_divergence(p, r); }), ErrorCode::SupportMismatch);
}

TEST(Perturbation, MustBeOrthogonalAndBounded) {
  const auto p = validate_distribution(Eigen::Vector2d(0.5, 0.5));
  EXPECT_EQ(code_of([&] { PerturbationVector(Eigen::Vector2d(1.0, 0.0), p, 1e-9); }),
            ErrorCode::InvalidPerturbation);
  EXPECT_EQ(code_of([&] { PerturbationVector(Eigen::Vector2d(1.0, -1.0), p, 1e-9); }),
            ErrorCode::InvalidPerturbation);
  const PerturbationVector l(Eigen::Vector2d(1.0, -1.0) / std::sqrt(2.0), p, 1e-9);
  EXPECT_EQ(code_of([&] { perturb(p, l, 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { perturb(p, l, 2.0); }), ErrorCode::InvalidPerturbation);
}

// KL of a small perturbation is quadratic in epsilon with an O(epsilon^3)
// remainder.
TEST(Perturbation, LocalKlApproximationProperty) {
  Rng rng(1);
  for (int n = 0; n < 200; ++n) {
    const int k = 2 + n % 5;
    const auto p = random_distribution(rng, k, 0.05);
    Eigen::VectorXd l = Eigen::VectorXd::NullaryExpr(k, [&] { return uniform(rng, -1, 1); });
    const Eigen::VectorXd s = p.sqrt();
    l -= s.dot(l) * s;
    l *= uniform(rng, 0.1, 1.0) / l.norm();
    const PerturbationVector pv(l, p, 1e-9);
    for (double eps : {1e-2, 1e-3}) {
      const double exact = kl_divergence(perturb(p, pv, eps), p);
      const double approx = local_kl_approx(p, pv, eps);
      EXPECT_NEAR(exact, approx, 50.0 * eps * eps * eps) << "n=" << n << " eps=" << eps;
    }
  }
}
