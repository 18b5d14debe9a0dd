#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "licnet/error.hpp"
#include "licnet/multihop.hpp"
#include "oracles/brute_paths.hpp"
#include "oracles/flow_lp.hpp"
#include "support/generators.hpp"

using namespace licnet;
using namespace licnet::testing;

namespace {

IcParameterGrid closed_grid(double c) {
  return IcParameterGrid{{{{c / 2, c, c}, {c / 4, c / 2, c / 2}, {c / 4, c / 2, c / 2}}}};
}

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

TEST(HarmonicMean, Basics) {
  EXPECT_EQ(code_of([] { harmonic_mean({}); }), ErrorCode::EmptyList);
  const std::vector<double> a{2.0, 6.0}, b{0.3, 0.0, 0.5}, c{0.7};
  EXPECT_DOUBLE_EQ(harmonic_mean(a), 3.0);
  EXPECT_EQ(harmonic_mean(b), 0.0);
  EXPECT_DOUBLE_EQ(harmonic_mean(c), 0.7);
}

TEST(Paths, ViterbiMatchesBruteForce) {
  Rng rng(30);
  for (int n = 0; n < 150; ++n) {
    const auto net = random_network(rng, 1 + n % 5, n % 2 == 0 ? 0.4 : 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto v = best_path(net, i, j);
        const auto b = oracle::brute_best_path(net, i, j);
        EXPECT_EQ(v.sigma_sq, b.first);
        EXPECT_EQ(v.path, b.second);
        EXPECT_EQ(v.path.front(), i);
        EXPECT_EQ(v.path.back(), j);
        EXPECT_EQ(v.path.size(), net.size() + 1);
      }
    }
    const auto s = sum_capacity(net);
    EXPECT_EQ(s.value, oracle::brute_sum_capacity(net).first);
  }
}

TEST(Paths, SingleLayerIsTheGrid) {
  Rng rng(31);
  const auto g = random_valid_grid(rng);
  const auto r = layered_region_params(LayeredNetwork{{g}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(r(i, j), g(i, j), 1e-15 * g(i, j));
  }
}

TEST(Paths, AllDeadFallsBackToCanonicalPath) {
  const IcParameterGrid zero{};
  const auto net = LayeredNetwork::replicated(zero, 3);
  const auto r = best_path(net, 2, 1);
  EXPECT_FALSE(r.positive);
  EXPECT_EQ(r.sigma_sq, 0.0);
  EXPECT_EQ(r.path, (Path{2, 0, 0, 1}));
  const auto s = sum_capacity(net);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.path, (Path{0, 0, 0, 0}));
}

TEST(Paths, ReplicatedLayersScale) {
  const auto g = closed_grid(0.36);
  const auto net = LayeredNetwork::replicated(g, 4);
  // Staying on the 1 -> 1 link costs four times one layer.
  EXPECT_NEAR(best_path(net, 1, 1).sigma_sq, g(1, 1) / 4.0, 1e-15);
}

TEST(Paths, EmptyNetworkRejected) {
  EXPECT_EQ(code_of([] { best_path(LayeredNetwork{}, 0, 1); }), ErrorCode::InvalidArgument);
  auto g = closed_grid(0.36);
  g(1, 0) = 1.0;
  EXPECT_EQ(code_of([&] { validate_network(LayeredNetwork{{g}}); }), ErrorCode::InvalidGrid);
  EXPECT_EQ(code_of([] { sum_capacity(LayeredNetwork{}); }), ErrorCode::InvalidArgument);
}

TEST(Modes, OrderAndValuesOnClosedGrid) {
  const auto& modes = fundamental_modes();
  const std::vector<std::string> labels{"s11",       "s00",       "s22",         "M(s10,s01)",
                                        "M(s20,s02)", "M(s12,s21)", "M(s10,s02,s21)", "M(s20,s01,s12)"};
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(modes[k].label, labels[k]);
  const double c = 0.36;
  const auto v = mode_values(closed_grid(c));
  const double expected[8] = {c / 2, c / 2, c / 2, 2 * c / 5, 2 * c / 5, c / 2, 3 * c / 7, 3 * c / 7};
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(v[k], expected[k], 1e-15) << labels[k];
  const auto best = identical_layer_sum_capacity(closed_grid(c));
  EXPECT_EQ(best.label, "s11");  // ties keep the first mode
  EXPECT_EQ(best.index, 0u);
}

TEST(Modes, AllocationIsBalancedAndAttainsTheMode) {
  Rng rng(32);
  for (int n = 0; n < 100; ++n) {
    const auto g = random_valid_grid(rng);
    for (const auto& mode : fundamental_modes()) {
      const auto s = mode_allocation(g, mode.label);
      EXPECT_NEAR(s.normalized_budget(), 1.0, 1e-12);
      EXPECT_LE(flow_imbalance(s, g).gamma, 1e-14);
      EXPECT_NEAR(throughput(s, g), mode_value(g, mode), 1e-14);
    }
  }
}

TEST(Modes, KnownAllocation) {
  const double c = 0.36;
  const auto s = mode_allocation(closed_grid(c), "M(s10,s01)");
  EXPECT_NEAR(s.delta[0][1][0], 0.8, 1e-15);
  EXPECT_NEAR(s.delta[0][0][1], 0.2, 1e-15);
  auto dead = closed_grid(c);
  dead(1, 0) = 0.0;
  dead(2, 0) = 0.0;
  EXPECT_EQ(code_of([&] { mode_allocation(dead, "M(s10,s01)"); }), ErrorCode::DeadLinkInMode);
  EXPECT_EQ(code_of([&] { mode_allocation(dead, "M(s01,s10)"); }), ErrorCode::InvalidArgument);
}

// Flow carried along one path through replicated layers conserves at every
// intermediate node, so averaging the layers divides the imbalance by L.
TEST(Flow, AveragingDividesImbalanceByDepth) {
  Rng rng(33);
  for (int n = 0; n < 100; ++n) {
    const auto g = random_valid_grid(rng);
    const std::size_t L = 2 + n % 5;
    const auto net = LayeredNetwork::replicated(g, L);
    std::uniform_int_distribution<int> node(0, 2);
    Path path{node(rng)};
    for (std::size_t l = 0; l < L; ++l) path.push_back(node(rng));
    double f = 1.0;
    for (std::size_t l = 0; l < L; ++l) f = std::min(f, g(path[l], path[l + 1]));
    f *= 0.5;
    Scheme s{std::vector<Grid3>(L, Grid3{})};
    for (std::size_t l = 0; l < L; ++l) s.delta[l][path[l]][path[l + 1]] = f / g(path[l], path[l + 1]);
    const auto full = flow_imbalance(s, net);
    EXPECT_LE(full.max_residual, 1e-15);
    const auto avg = flow_imbalance(average_scheme(s), g);
    EXPECT_NEAR(avg.gamma, full.gamma / static_cast<double>(L), 1e-14);
    // Throughput is already per layer.
    EXPECT_NEAR(throughput(average_scheme(s), g), throughput(s, net), 1e-14);
  }
}

TEST(Flow, GammaSchemeChecksStatedImbalance) {
  const auto g = closed_grid(0.36);
  Scheme s{{Grid3{}}};
  s.delta[0][1][0] = 0.5;
  const auto gs = GammaScheme::measure(s, g);
  EXPECT_NEAR(gs.gamma(), 2 * 0.5 * g(1, 0), 1e-15);
  EXPECT_NO_THROW(GammaScheme(s, gs.gamma(), LayeredNetwork{{g}}));
  EXPECT_THROW(GammaScheme(s, 0.0, LayeredNetwork{{g}}), Error);
  EXPECT_EQ(code_of([&] { flow_imbalance(s, LayeredNetwork::replicated(g, 2)); }),
            ErrorCode::DimensionMismatch);
}

// The two independent balance equations carry all the information of the
// three, and the best balanced flow is the best fundamental mode.
TEST(FlowLp, TwoEqualitiesSufficeAndMatchModes) {
  Rng rng(34);
  for (int n = 0; n < 150; ++n) {
    const auto g = random_valid_grid(rng, n % 3 == 0 ? 0.3 : 0.0);
    if (n % 3 != 0) EXPECT_EQ(oracle::balance_rank(g), 2);
    const double three = oracle::flow_balance_lp(g);
    EXPECT_NEAR(oracle::flow_balance_lp(g, {2, std::nullopt}), three, 1e-12);
    EXPECT_NEAR(three, identical_layer_sum_capacity(g).value, 1e-10);
  }
}

TEST(FlowLp, Delta02Branches) {
  Rng rng(35);
  for (int n = 0; n < 100; ++n) {
    const auto g = random_valid_grid(rng);
    const double full = oracle::flow_balance_lp(g);
    const double without = oracle::flow_balance_lp(g, {3, 0.0});
    EXPECT_LE(without, full + 1e-12);
    // With delta02 fixed to the value of the best mode using it, the
    // optimum is at least that mode.
    const auto s = mode_allocation(g, "M(s20,s02)");
    const double with = oracle::flow_balance_lp(g, {3, s.delta[0][0][2]});
    EXPECT_GE(with, mode_value(g, fundamental_modes()[4]) - 1e-12);
    EXPECT_LE(with, full + 1e-12);
  }
}
