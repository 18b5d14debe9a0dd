#pragma once

#include <random>

#include <Eigen/Dense>

#include "licnet/grid.hpp"
#include "licnet/multihop.hpp"
#include "licnet/probability.hpp"

namespace licnet::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

// Column-stochastic matrix with every entry at least `floor`.
Eigen::MatrixXd random_stochastic(Rng& rng, int rows, int cols, double floor = 0.02);
ChannelMatrix random_channel(Rng& rng, int rows, int cols);
ProbabilityVector random_distribution(Rng& rng, int n, double floor = 0.05);

// Grid satisfying every structural chain. Each of the four private entries
// is zero with probability zero_prob; the dependent entries are drawn inside
// their chain intervals, landing on an interval end with probability
// edge_prob.
IcParameterGrid random_valid_grid(Rng& rng, double zero_prob = 0.0, double edge_prob = 0.1);

LayeredNetwork random_network(Rng& rng, std::size_t layers, double zero_prob = 0.0);

// Single-layer scheme with sum(delta) = budget_fraction <= 1.
Scheme random_scheme(Rng& rng, double budget_fraction);

// Inputs 0, 1 are useless, inputs 2, 3 pass through a BSC(alpha).
ChannelMatrix half_useless_bsc(double alpha);
ChannelMatrix mirrored_half_useless_bsc(double alpha);
// Binary-output joint channels over 4x4 inputs, x1-major.
ChannelMatrix quaternary_joint_rx1(double alpha);
ChannelMatrix quaternary_joint_rx2(double alpha);
// Y = X1 xor X2 through a BSC(alpha), or Y = X2 through a BSC(alpha) when
// second_only is set.
ChannelMatrix binary_mac_joint(double alpha, bool second_only);
ProbabilityVector uniform_distribution(int n);

// X1 = (X1', X1'') over 4 symbols, X2 binary, Y1 = X1' xor X2,
// Y2 = X1''.
ChannelMatrix bit_routing_joint(int receiver);
ProbabilityVector bit_routing_p1();
ProbabilityVector bit_routing_p2();

}  // namespace licnet::testing
