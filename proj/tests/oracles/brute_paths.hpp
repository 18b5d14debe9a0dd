#pragma once

#include <limits>
#include <utility>

#include "licnet/multihop.hpp"

namespace licnet::oracle {

// Total cost of a node sequence, summed from the last link backwards.
inline double path_cost(const LayeredNetwork& net, const Path& p) {
  double cost = 0.0;
  for (std::size_t l = net.size(); l-- > 0;) {
    const double s = net.layers[l](p[l], p[l + 1]);
    cost = (s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity()) + cost;
  }
  return cost;
}

// Visits all 3^(L+1) node sequences in lexicographic order.
template <class F>
void for_each_sequence(std::size_t length, F&& f) {
  Path p(length, 0);
  while (true) {
    f(p);
    std::size_t k = length;
    while (k > 0 && p[k - 1] == 2) p[--k] = 0;
    if (k == 0) return;
    ++p[k - 1];
  }
}

// Cheapest i -> j path; the first in lexicographic order among ties.
inline std::pair<double, Path> brute_best_path(const LayeredNetwork& net, int i, int j) {
  double best = std::numeric_limits<double>::quiet_NaN();
  Path arg;
  for_each_sequence(net.size() + 1, [&](const Path& p) {
    if (p.front() != i || p.back() != j) return;
    const double c = path_cost(net, p);
    if (arg.empty() || c < best) {
      best = c;
      arg = p;
    }
  });
  return {best < std::numeric_limits<double>::infinity() ? 1.0 / best : 0.0, arg};
}

inline std::pair<double, Path> brute_sum_capacity(const LayeredNetwork& net) {
  double best = 0.0;
  Path arg;
  for_each_sequence(net.size() + 1, [&](const Path& p) {
    const double c = path_cost(net, p);
    if (arg.empty() || c < best) {
      best = c;
      arg = p;
    }
  });
  const double value =
      best < std::numeric_limits<double>::infinity() ? static_cast<double>(net.size()) / best : 0.0;
  return {value, arg};
}

}  // namespace licnet::oracle
