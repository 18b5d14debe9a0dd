#include "licnet/multihop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "licnet/error.hpp"

namespace licnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double edge_cost(double sigma_sq) { return sigma_sq > 0.0 ? 1.0 / sigma_sq : kInf; }

// cost_to_go[l][v]: cheapest cost from node v at boundary l to the end
// (boundary L), with terminal costs given. Sums associate to the right.
std::vector<std::array<double, 3>> backward(const LayeredNetwork& net,
                                            const std::array<double, 3>& terminal) {
  const std::size_t L = net.size();
  std::vector<std::array<double, 3>> d(L + 1);
  d[L] = terminal;
  for (std::size_t l = L; l-- > 0;) {
    for (int a = 0; a < 3; ++a) {
      double best = kInf;
      for (int b = 0; b < 3; ++b) {
        best = std::min(best, edge_cost(net.layers[l](a, b)) + d[l + 1][b]);
      }
      d[l][a] = best;
    }
  }
  return d;
}

Path forward(const LayeredNetwork& net, const std::vector<std::array<double, 3>>& d, int start,
             int forced_end) {
  const std::size_t L = net.size();
  Path path{start};
  int a = start;
  for (std::size_t l = 0; l < L; ++l) {
    int next = -1;
    if (l + 1 == L && forced_end >= 0) {
      next = forced_end;
    } else {
      for (int b = 0; b < 3; ++b) {
        if (edge_cost(net.layers[l](a, b)) + d[l + 1][b] == d[l][a]) {
          next = b;
          break;
        }
      }
    }
    path.push_back(next);
    a = next;
  }
  return path;
}

void require_layers(const LayeredNetwork& net) {
  if (net.size() == 0) throw Error(ErrorCode::InvalidArgument, "network has no layers");
}

void require_node(int v, const char* what) {
  if (v < 0 || v > 2) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be 0, 1 or 2");
}

}  // namespace

LayeredNetwork LayeredNetwork::replicated(const IcParameterGrid& g, std::size_t layers) {
  return {std::vector<IcParameterGrid>(layers, g)};
}

void validate_network(const LayeredNetwork& net) {
  require_layers(net);
  for (std::size_t l = 0; l < net.size(); ++l) {
    require_valid_grid(net.layers[l], "layer " + std::to_string(l + 1));
  }
}

double harmonic_mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyList, "harmonic mean of an empty list");
  double inv = 0.0;
  for (double v : values) {
    if (v < 0.0) throw Error(ErrorCode::InvalidArgument, "harmonic mean needs non-negative values");
    if (v == 0.0) return 0.0;
    inv += 1.0 / v;
  }
  return static_cast<double>(values.size()) / inv;
}

PathResult best_path(const LayeredNetwork& net, int i, int j) {
  require_layers(net);
  require_node(i, "source");
  require_node(j, "destination");
  std::array<double, 3> terminal{kInf, kInf, kInf};
  terminal[j] = 0.0;
  const auto d = backward(net, terminal);
  const double cost = d[0][i];
  if (cost == kInf) {
    // Every path is dead; report the lexicographically first one.
    Path path(net.size() + 1, 0);
    path.front() = i;
    path.back() = j;
    return {0.0, path, false};
  }
  return {1.0 / cost, forward(net, d, i, j), true};
}

IcParameterGrid layered_region_params(const LayeredNetwork& net) {
  IcParameterGrid g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = best_path(net, i, j).sigma_sq;
  }
  return g;
}

SumCapacityResult sum_capacity(const LayeredNetwork& net) {
  require_layers(net);
  const auto d = backward(net, {0.0, 0.0, 0.0});
  int start = 0;
  for (int a = 1; a < 3; ++a) {
    if (d[0][a] < d[0][start]) start = a;
  }
  const double cost = d[0][start];
  if (cost == kInf) return {0.0, Path(net.size() + 1, 0)};
  return {static_cast<double>(net.size()) / cost, forward(net, d, start, -1)};
}

const std::array<Mode, 8>& fundamental_modes() {
  static const std::array<Mode, 8> modes{{
      {"s11", {1}},
      {"s00", {0}},
      {"s22", {2}},
      {"M(s10,s01)", {1, 0}},
      {"M(s20,s02)", {2, 0}},
      {"M(s12,s21)", {1, 2}},
      {"M(s10,s02,s21)", {1, 0, 2}},
      {"M(s20,s01,s12)", {2, 0, 1}},
  }};
  return modes;
}

double mode_value(const IcParameterGrid& g, const Mode& mode) {
  std::vector<double> links;
  const std::size_t k = mode.cycle.size();
  for (std::size_t n = 0; n < k; ++n) links.push_back(g(mode.cycle[n], mode.cycle[(n + 1) % k]));
  return harmonic_mean(links);
}

std::array<double, 8> mode_values(const IcParameterGrid& g) {
  std::array<double, 8> out{};
  for (std::size_t m = 0; m < 8; ++m) out[m] = mode_value(g, fundamental_modes()[m]);
  return out;
}

ModeResult best_mode(const IcParameterGrid& g) {
  const auto values = mode_values(g);
  std::size_t best = 0;
  for (std::size_t m = 1; m < values.size(); ++m) {
    if (values[m] > values[best]) best = m;
  }
  return {values[best], fundamental_modes()[best].label, best};
}

ModeResult identical_layer_sum_capacity(const IcParameterGrid& g) {
  require_valid_grid(g, "identical_layer_sum_capacity");
  return best_mode(g);
}

double Scheme::normalized_budget() const {
  double total = 0.0;
  for (const auto& layer : delta) {
    for (const auto& row : layer) {
      for (double v : row) total += v;
    }
  }
  return delta.empty() ? 0.0 : total / static_cast<double>(delta.size());
}

Scheme mode_allocation(const IcParameterGrid& g, const std::string& label) {
  const auto& modes = fundamental_modes();
  const auto it = std::find_if(modes.begin(), modes.end(),
                               [&](const Mode& m) { return label == m.label; });
  if (it == modes.end()) throw Error(ErrorCode::InvalidArgument, "unknown mode " + label);
  const auto& cycle = it->cycle;
  const std::size_t k = cycle.size();
  for (std::size_t n = 0; n < k; ++n) {
    const int a = cycle[n], b = cycle[(n + 1) % k];
    if (!(g(a, b) > 0.0)) {
      throw Error(ErrorCode::DeadLinkInMode,
                  "mode " + label + " uses dead link " + message_label(a, b));
    }
  }
  const double m = mode_value(g, *it);
  Scheme s{{Grid3{}}};
  for (std::size_t n = 0; n < k; ++n) {
    const int a = cycle[n], b = cycle[(n + 1) % k];
    s.delta[0][a][b] = m / (static_cast<double>(k) * g(a, b));
  }
  if (s.normalized_budget() > 1.0 + 1e-12) {
    throw Error(ErrorCode::NumericalFailure, "mode allocation exceeds the budget");
  }
  if (flow_imbalance(s, g).gamma > 1e-12) {
    throw Error(ErrorCode::NumericalFailure, "mode allocation is not flow balanced");
  }
  return s;
}

namespace {

std::array<double, 3> outflow(const Grid3& d, const IcParameterGrid& g) {
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) out[k] += d[k][j] * g(k, j);
  }
  return out;
}

std::array<double, 3> inflow(const Grid3& d, const IcParameterGrid& g) {
  std::array<double, 3> in{};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) in[k] += d[i][k] * g(i, k);
  }
  return in;
}

}  // namespace

ImbalanceReport flow_imbalance(const Scheme& s, const LayeredNetwork& net) {
  require_layers(net);
  if (s.layers() != net.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "scheme has " + std::to_string(s.layers()) + " layers, network has " +
                    std::to_string(net.size()));
  }
  const std::size_t L = net.size();
  ImbalanceReport r{0.0, {}, {}, 0.0};
  const auto out1 = outflow(s.delta[0], net.layers[0]);
  const auto inL = inflow(s.delta[L - 1], net.layers[L - 1]);
  for (int k = 0; k < 3; ++k) {
    r.end_to_end[k] = out1[k] - inL[k];
    r.gamma += std::abs(r.end_to_end[k]);
  }
  for (std::size_t l = 0; l + 1 < L; ++l) {
    const auto in = inflow(s.delta[l], net.layers[l]);
    const auto out = outflow(s.delta[l + 1], net.layers[l + 1]);
    std::array<double, 3> res{};
    for (int k = 0; k < 3; ++k) {
      res[k] = in[k] - out[k];
      r.max_residual = std::max(r.max_residual, std::abs(res[k]));
    }
    r.residuals.push_back(res);
  }
  return r;
}

ImbalanceReport flow_imbalance(const Scheme& s, const IcParameterGrid& g) {
  return flow_imbalance(s, LayeredNetwork{{g}});
}

double throughput(const Scheme& s, const LayeredNetwork& net) {
  require_layers(net);
  if (s.layers() != net.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scheme and network have different layer counts");
  }
  double total = 0.0;
  for (std::size_t l = 0; l < net.size(); ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) total += s.delta[l][i][j] * net.layers[l](i, j);
    }
  }
  return total / static_cast<double>(net.size());
}

double throughput(const Scheme& s, const IcParameterGrid& g) {
  return throughput(s, LayeredNetwork{{g}});
}

Scheme average_scheme(const Scheme& s) {
  if (s.layers() == 0) throw Error(ErrorCode::InvalidArgument, "scheme has no layers");
  Grid3 avg{};
  for (const auto& layer : s.delta) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) avg[i][j] += layer[i][j];
    }
  }
  for (auto& row : avg) {
    for (double& v : row) v /= static_cast<double>(s.layers());
  }
  return {{avg}};
}

GammaScheme GammaScheme::measure(Scheme s, const LayeredNetwork& net) {
  const double gamma = flow_imbalance(s, net).gamma;
  return GammaScheme(std::move(s), gamma, 0);
}

GammaScheme GammaScheme::measure(Scheme s, const IcParameterGrid& g) {
  return measure(std::move(s), LayeredNetwork{{g}});
}

GammaScheme::GammaScheme(Scheme s, double gamma, const LayeredNetwork& net)
    : scheme_(std::move(s)), gamma_(gamma) {
  const double actual = flow_imbalance(scheme_, net).gamma;
  if (std::abs(actual - gamma) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "stated gamma " + std::to_string(gamma) +
                                                " does not match the scheme's " +
                                                std::to_string(actual));
  }
}

}  // namespace licnet
