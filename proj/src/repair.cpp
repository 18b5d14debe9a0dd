#include <algorithm>
#include <cmath>
#include <numeric>

#include "licnet/error.hpp"
#include "licnet/multihop.hpp"

namespace licnet {
namespace {

constexpr double kBalanced = 1e-15;

// Working copy in relabeled coordinates.
struct Frame {
  Grid3 d{};
  Grid3 s{};
  std::array<double, 3> alpha{};  // outflow - inflow per node
  double added = 0.0;
};

std::array<double, 3> node_excess(const Grid3& d, const Grid3& s) {
  std::array<double, 3> a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a[i] += d[i][j] * s[i][j];
      a[j] -= d[i][j] * s[i][j];
    }
  }
  return a;
}

void raise(Frame& f, int i, int j, double amount) {
  const double step = amount / f.s[i][j];
  f.d[i][j] += step;
  f.added += std::abs(step);
}

// Zeroes a live off-diagonal link and returns the flow it carried.
double cut(Frame& f, int i, int j) {
  if (f.s[i][j] == 0.0) return 0.0;
  const double flow = f.d[i][j] * f.s[i][j];
  f.d[i][j] = 0.0;
  return flow;
}

void swap_nodes_01(Frame& f) {
  for (Grid3* m : {&f.d, &f.s}) {
    std::swap((*m)[0], (*m)[1]);
    for (auto& row : *m) std::swap(row[0], row[1]);
  }
  std::swap(f.alpha[0], f.alpha[1]);
}

// Case (2) with sigma20 > 0 and sigma21 = 0.
std::string repair_case2(Frame& f) {
  const double a0 = f.alpha[0], a1 = f.alpha[1];
  if (f.s[0][1] > 0.0) {
    raise(f, 0, 1, a1);
    raise(f, 2, 0, a0 + a1);
    return "(i)";
  }
  const double f10 = cut(f, 1, 0);
  cut(f, 1, 2);
  raise(f, 2, 0, a0 + f10);
  return "(ii)";
}

// Assumes alpha0, alpha1 >= 0 >= alpha2.
std::string repair_oriented(Frame& f) {
  const bool s20 = f.s[2][0] > 0.0, s21 = f.s[2][1] > 0.0;
  if (s20 && s21) {
    const double a0 = f.alpha[0], a1 = f.alpha[1];
    raise(f, 2, 0, a0);
    raise(f, 2, 1, a1);
    return "1";
  }
  if (s20) return "2" + repair_case2(f);
  if (s21) {
    swap_nodes_01(f);
    const std::string sub = repair_case2(f);
    swap_nodes_01(f);
    return "3" + sub;
  }
  if (f.s[1][0] > 0.0) {
    const double f02 = cut(f, 0, 2);
    cut(f, 1, 2);
    const double x = f.alpha[0] - f02;
    if (x >= 0.0) {
      raise(f, 1, 0, x);
    } else if (f.s[0][1] > 0.0) {
      raise(f, 0, 1, -x);
    } else {
      raise(f, 1, 0, x);
      f.d[1][0] = std::max(f.d[1][0], 0.0);
    }
    return "4(i)";
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) cut(f, i, j);
    }
  }
  return "4(ii)";
}

Grid3 transpose(const Grid3& m) {
  Grid3 t{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  }
  return t;
}

Grid3 relabel_grid(const Grid3& m, const std::array<int, 3>& p) {
  Grid3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[p[i]][p[j]] = m[i][j];
  }
  return out;
}

Grid3 unrelabel_grid(const Grid3& m, const std::array<int, 3>& p) {
  Grid3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[p[i]][p[j]];
  }
  return out;
}

}  // namespace

RepairResult repair_to_balanced(const GammaScheme& gs, const IcParameterGrid& g) {
  const Scheme& input = gs.scheme();
  if (input.layers() != 1) {
    throw Error(ErrorCode::InvalidArgument, "repair needs a single-layer scheme");
  }
  const Grid3& d0 = input.delta[0];
  double total = 0.0;
  for (const auto& row : d0) {
    for (double v : row) {
      if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "scheme has a negative delta");
      total += v;
    }
  }
  if (total > 1.0 + 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "scheme exceeds the delta budget");
  }

  double max_inv = 0.0, sigma_total = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (g(i, j) < 0.0) throw Error(ErrorCode::InvalidArgument, "negative grid entry");
      if (g(i, j) > 0.0) max_inv = std::max(max_inv, 1.0 / g(i, j));
      sigma_total += g(i, j);
    }
  }

  RepairResult r;
  r.epsilon = gs.gamma();
  r.change_bound = 4.0 * max_inv * r.epsilon;
  r.loss_bound = r.change_bound * sigma_total;
  r.throughput_before = throughput(input, g);
  r.relabel = {0, 1, 2};
  r.reversed = false;

  Frame f;
  f.d = d0;
  f.s = g.sigma_sq;
  f.alpha = node_excess(f.d, f.s);

  if (std::all_of(f.alpha.begin(), f.alpha.end(),
                  [](double a) { return std::abs(a) <= kBalanced; })) {
    r.scheme = input;
    r.max_change = 0.0;
    r.throughput_after = r.throughput_before;
    r.repair_case = "balanced";
    return r;
  }

  if (std::count_if(f.alpha.begin(), f.alpha.end(), [](double a) { return a >= 0.0; }) < 2) {
    r.reversed = true;
    f.d = transpose(f.d);
    f.s = transpose(f.s);
    for (double& a : f.alpha) a = -a;
  }
  const int sink = static_cast<int>(std::min_element(f.alpha.begin(), f.alpha.end()) -
                                    f.alpha.begin());
  int next = 0;
  for (int k = 0; k < 3; ++k) r.relabel[k] = (k == sink) ? 2 : next++;

  f.d = relabel_grid(f.d, r.relabel);
  f.s = relabel_grid(f.s, r.relabel);
  std::array<double, 3> alpha{};
  for (int k = 0; k < 3; ++k) alpha[r.relabel[k]] = f.alpha[k];
  f.alpha = alpha;
  if (f.alpha[0] < 0.0 || f.alpha[1] < 0.0 || f.alpha[2] > 0.0) {
    throw Error(ErrorCode::UnrepairableZeroPattern, "no relabeling orients the node excesses");
  }

  r.repair_case = repair_oriented(f);

  const double scale = 1.0 / (1.0 + f.added);
  for (auto& row : f.d) {
    for (double& v : row) v *= scale;
  }
  Grid3 out = unrelabel_grid(f.d, r.relabel);
  if (r.reversed) out = transpose(out);

  r.scheme = Scheme{{out}};
  r.max_change = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.max_change = std::max(r.max_change, std::abs(out[i][j] - d0[i][j]));
  }
  r.throughput_after = throughput(r.scheme, g);

  const double residual = flow_imbalance(r.scheme, g).gamma;
  if (residual > 1e-12 * std::max(1.0, sigma_total)) {
    throw Error(ErrorCode::UnrepairableZeroPattern,
                "case " + r.repair_case + " left imbalance " + std::to_string(residual));
  }
  return r;
}

}  // namespace licnet
