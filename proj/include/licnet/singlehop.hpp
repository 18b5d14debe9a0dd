#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "licnet/dtm.hpp"
#include "licnet/grid.hpp"
#include "licnet/probability.hpp"

namespace licnet {

struct P2pResult {
  double sigma_sq;
  SingularSolution solution;
};

P2pResult p2p_parameter(const ChannelMatrix& w, const ProbabilityVector& p_x);

// Common-message parameter together with its certificate.
struct CommonParameter {
  double sigma_sq;
  PerturbationVector l;
  double duality_gap;  // 0 when solved as a singular value problem
  double dual_bound;
};

struct BcParameters {
  double sigma1_sq;
  double sigma2_sq;
  double sigma0_sq;
  PerturbationVector l1;
  PerturbationVector l2;
  PerturbationVector l0;
  double duality_gap;
  double dual_bound;
};

BcParameters bc_parameters(const ChannelMatrix& w1, const ChannelMatrix& w2,
                           const ProbabilityVector& p_x);

// sigma1^2 sigma2^2 / (sigma1^2 + sigma2^2); 0 when both vanish.
double time_share_rate(double sigma1_sq, double sigma2_sq);

struct MacParameters {
  double sigma1_sq;
  double sigma2_sq;
  double sigma0_sq;
  PerturbationVector l1;
  PerturbationVector l2;
  PerturbationVector l0;  // stacked, |X1| + |X2| entries
};

// Channel seen by `user` (1 or 2) after averaging out the other input. The
// joint channel's columns are ordered x1-major: column x1 * |X2| + x2.
ChannelMatrix marginal_channel(const ChannelMatrix& joint, const ProbabilityVector& p1,
                               const ProbabilityVector& p2, int user);

MacParameters mac_parameters(const ChannelMatrix& joint, const ProbabilityVector& p1,
                             const ProbabilityVector& p2);

// max over unit L orthogonal to sqrt(P_X) of min(|B1 L|^2, |B2 L|^2); both
// DTMs share the input distribution.
CommonParameter broadcast_common(const Dtm& d1, const Dtm& d2,
                                 std::uint64_t seed = kDefaultSeed);

// Top deflated singular pair of [B1 B2] with the blockwise constraints; both
// DTMs share the output distribution.
CommonParameter stacked_common(const Dtm& d1, const Dtm& d2);

// max over stacked unit L of min over receivers j of |[B1j B2j] L|^2.
CommonParameter stacked_broadcast_common(const Dtm& d11, const Dtm& d21, const Dtm& d12,
                                         const Dtm& d22, std::uint64_t seed = kDefaultSeed);

// Marginal channels W_ij (Tx i -> Rx j) of a two-user interference channel.
struct IcChannels {
  ChannelMatrix w11;
  ChannelMatrix w12;
  ChannelMatrix w21;
  ChannelMatrix w22;
  ProbabilityVector p1;
  ProbabilityVector p2;
};

// Derives the four marginals from the joint channels to each receiver.
IcChannels ic_marginals(const ChannelMatrix& joint_y1, const ChannelMatrix& joint_y2,
                        const ProbabilityVector& p1, const ProbabilityVector& p2);

struct IcResult {
  IcParameterGrid grid;
  std::map<std::string, PerturbationVector> certificates;  // keyed by message label
  double max_duality_gap;
};

IcResult ic_parameters_detailed(const IcChannels& ic);

IcParameterGrid ic_parameters(const ChannelMatrix& w11, const ChannelMatrix& w12,
                              const ChannelMatrix& w21, const ChannelMatrix& w22,
                              const ProbabilityVector& p1, const ProbabilityVector& p2);

}  // namespace licnet
