#include <cmath>

#include <gtest/gtest.h>

#include "licnet/dtm.hpp"
#include "licnet/error.hpp"
#include "oracles/jacobi_svd.hpp"
#include "support/generators.hpp"

using namespace licnet;
using namespace licnet::testing;

TEST(Dtm, TopTripleIsSqrtDistributions) {
  Rng rng(2);
  for (int n = 0; n < 50; ++n) {
    const auto w = random_channel(rng, 3, 4);
    const auto p = random_distribution(rng, 4);
    const Dtm d = build_dtm(w, p);
    EXPECT_LT((d.matrix() * d.top_right() - d.top_left()).norm(), 1e-14);
    EXPECT_LT((d.matrix().transpose() * d.top_left() - d.top_right()).norm(), 1e-14);
  }
}

TEST(Dtm, ZeroProbabilitySymbolsAreNamed) {
  const auto w = ChannelMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}});
  try {
    build_dtm(w, validate_distribution(Eigen::Vector2d(0.5, 0.5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroProbabilitySymbol);
    EXPECT_NE(std::string(e.what()).find("output symbol 1"), std::string::npos);
  }
  EXPECT_THROW(build_dtm(ChannelMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}),
                         validate_distribution(Eigen::Vector2d(1.0, 0.0))),
               Error);
}

// Second singular value against an independent one-sided Jacobi SVD of the
// undeflated DTM.
TEST(Dtm, SecondSingularMatchesJacobiOracle) {
  Rng rng(3);
  for (int n = 0; n < 300; ++n) {
    const int rows = 2 + n % 4, cols = 2 + (n / 4) % 4;
    const auto w = random_channel(rng, rows, cols);
    const auto p = random_distribution(rng, cols);
    const Dtm d = build_dtm(w, p);
    const auto s = second_singular(d);
    EXPECT_NEAR(s.value, oracle::dtm_second_singular(d.matrix()), 1e-10) << "n=" << n;
    EXPECT_NEAR(s.vector.norm(), 1.0, 1e-12);
    EXPECT_NEAR(s.vector.entries().dot(d.top_right()), 0.0, 1e-10);
    EXPECT_NEAR((d.matrix() * s.vector.entries()).norm(), s.value, 1e-10);
  }
}

TEST(Dtm, SignConventionAndDegeneracy) {
  // Identity channel: every direction orthogonal to sqrt(P) has gain 1.
  const auto w = ChannelMatrix::from(Eigen::Matrix3d::Identity());
  const auto s = second_singular(build_dtm(w, uniform_distribution(3)));
  EXPECT_NEAR(s.value, 1.0, 1e-12);
  EXPECT_TRUE(s.degenerate);
  const auto& v = s.vector.entries();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) {
      EXPECT_GT(v(i), 0.0);
      break;
    }
  }
  const auto e1 = second_singular(build_dtm(half_useless_bsc(0.1), uniform_distribution(4)));
  EXPECT_FALSE(e1.degenerate);
  EXPECT_GT(e1.vector.entries()(2), 0.0);
}

TEST(Dtm, UselessChannelHasZeroGain) {
  const auto w = ChannelMatrix::from_rows({{0.3, 0.3, 0.3}, {0.7, 0.7, 0.7}});
  const auto s = second_singular(build_dtm(w, uniform_distribution(3)));
  EXPECT_EQ(s.value, 0.0);
  EXPECT_NEAR(s.vector.norm(), 1.0, 1e-12);
}

TEST(Dtm, ComplementIsOrthonormal) {
  Eigen::MatrixXd ex(4, 1);
  ex << 1, 2, 3, 4;
  ex /= ex.norm();
  const auto q = orthonormal_complement(ex);
  EXPECT_EQ(q.cols(), 3);
  EXPECT_LT((q.transpose() * q - Eigen::Matrix3d::Identity()).norm(), 1e-14);
  EXPECT_LT((q.transpose() * ex).norm(), 1e-14);
}
