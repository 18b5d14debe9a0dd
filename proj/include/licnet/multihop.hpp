#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "licnet/grid.hpp"

namespace licnet {

// Per-layer parameter grids, layer 1 first. Not validated on construction;
// call validate_network on user input.
struct LayeredNetwork {
  std::vector<IcParameterGrid> layers;

  std::size_t size() const { return layers.size(); }
  static LayeredNetwork replicated(const IcParameterGrid& g, std::size_t layers);
};

// Throws InvalidGrid naming the first offending layer.
void validate_network(const LayeredNetwork& net);

// Virtual node index at each of the L+1 layer boundaries.
using Path = std::vector<int>;

// k / sum(1 / v); 0 if any value is 0. Throws EmptyList.
double harmonic_mean(std::span<const double> values);

struct PathResult {
  double sigma_sq;  // 1 / (total cost) = (1/L) M(path)
  Path path;
  bool positive;    // false if every path crosses a dead link
};

// Minimum total cost path from virtual source i to virtual destination j,
// with edge cost 1/sigma^2 (infinite for dead links). Ties resolve to the
// lexicographically smallest node sequence.
PathResult best_path(const LayeredNetwork& net, int i, int j);

// best_path for all nine (i, j) pairs.
IcParameterGrid layered_region_params(const LayeredNetwork& net);

struct SumCapacityResult {
  double value;  // M(path), no 1/L factor
  Path path;
};

SumCapacityResult sum_capacity(const LayeredNetwork& net);

// The eight cycles on {0, 1, 2} that can carry the sum capacity of a network
// of identical layers.
struct Mode {
  const char* label;
  std::vector<int> cycle;  // links cycle[n] -> cycle[n+1], wrapping around
};

const std::array<Mode, 8>& fundamental_modes();

// Harmonic mean of the mode's link parameters.
double mode_value(const IcParameterGrid& g, const Mode& mode);
std::array<double, 8> mode_values(const IcParameterGrid& g);

struct ModeResult {
  double value;
  std::string label;
  std::size_t index;  // position in fundamental_modes()
};

// Best mode for infinitely many identical layers; ties resolve to the
// earlier mode. Throws InvalidGrid.
ModeResult identical_layer_sum_capacity(const IcParameterGrid& g);
// Same maximization without the grid validation.
ModeResult best_mode(const IcParameterGrid& g);

struct Scheme {
  std::vector<Grid3> delta;  // delta[l][i][j]

  std::size_t layers() const { return delta.size(); }
  // (1/L) sum of all entries.
  double normalized_budget() const;
};

// Single-layer scheme that runs the given mode: equal flow M/k on each of its
// k links. Throws DeadLinkInMode or InvalidArgument for an unknown label.
Scheme mode_allocation(const IcParameterGrid& g, const std::string& label);

struct ImbalanceReport {
  double gamma;                      // sum_k |end_to_end[k]|
  std::array<double, 3> end_to_end;  // outflow at layer 1 minus inflow at layer L
  // residuals[l][k]: inflow into node k from layer l+1 minus outflow from
  // node k in layer l+2 (intermediate boundaries only).
  std::vector<std::array<double, 3>> residuals;
  double max_residual;
};

ImbalanceReport flow_imbalance(const Scheme& s, const LayeredNetwork& net);
ImbalanceReport flow_imbalance(const Scheme& s, const IcParameterGrid& g);

// (1/L) sum over layers and links of delta * sigma^2.
double throughput(const Scheme& s, const LayeredNetwork& net);
double throughput(const Scheme& s, const IcParameterGrid& g);

// Layer average of an L-layer scheme, as a single-layer scheme.
Scheme average_scheme(const Scheme& s);

// A scheme with its end-to-end imbalance gamma.
class GammaScheme {
 public:
  static GammaScheme measure(Scheme s, const LayeredNetwork& net);
  static GammaScheme measure(Scheme s, const IcParameterGrid& g);
  // Throws InvalidArgument if gamma differs from the recomputed value by more
  // than 1e-9.
  GammaScheme(Scheme s, double gamma, const LayeredNetwork& net);

  const Scheme& scheme() const { return scheme_; }
  double gamma() const { return gamma_; }

 private:
  GammaScheme(Scheme s, double gamma, int) : scheme_(std::move(s)), gamma_(gamma) {}
  Scheme scheme_;
  double gamma_;
};

struct RepairResult {
  Scheme scheme;               // balanced single-layer scheme
  double epsilon;              // gamma of the input
  double max_change;           // max |delta* - delta_hat|
  double change_bound;         // 4 max(1/sigma^2) epsilon
  double throughput_before;
  double throughput_after;
  double loss_bound;           // change_bound * sum sigma^2
  std::string repair_case;     // "balanced", "1", "2(i)", "2(ii)", "3(i)", "3(ii)", "4(i)", "4(ii)"
  std::array<int, 3> relabel;  // node k was handled as node relabel[k]
  bool reversed;               // construction ran on the reversed network
};

// Turns a single-layer gamma-scheme into a flow-balanced scheme within the
// delta budget, perturbing each entry by at most 4 max(1/sigma^2) gamma.
RepairResult repair_to_balanced(const GammaScheme& s, const IcParameterGrid& g);

}  // namespace licnet
