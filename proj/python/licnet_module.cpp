#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "licnet/cli/commands.hpp"
#include "licnet/error.hpp"
#include "licnet/feedback.hpp"
#include "licnet/multihop.hpp"
#include "licnet/singlehop.hpp"

namespace py = pybind11;
using namespace licnet;

namespace {

IcParameterGrid to_grid(const Eigen::Matrix3d& m) {
  IcParameterGrid g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = m(i, j);
  }
  return g;
}

Eigen::Matrix3d from_grid(const Grid3& g) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = g[i][j];
  }
  return m;
}

LayeredNetwork to_network(const std::vector<Eigen::Matrix3d>& layers) {
  LayeredNetwork net;
  for (const auto& m : layers) net.layers.push_back(to_grid(m));
  return net;
}

ChannelMatrix channel(const Eigen::MatrixXd& w) { return ChannelMatrix::from(w); }
ProbabilityVector dist(const Eigen::VectorXd& p) { return validate_distribution(p); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear information coupling parameters, sum capacities and schemes";

  static py::exception<Error> error(m, "LicnetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("p2p_parameter", [](const Eigen::MatrixXd& w, const Eigen::VectorXd& p) {
    const auto r = p2p_parameter(channel(w), dist(p));
    return py::make_tuple(r.sigma_sq, r.solution.vector.entries());
  }, py::arg("w"), py::arg("p"), "Returns (sigma^2, optimal perturbation vector).");

  m.def("bc_parameters", [](const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2, const Eigen::VectorXd& p) {
    const auto r = bc_parameters(channel(w1), channel(w2), dist(p));
    return py::dict(py::arg("sigma1_sq") = r.sigma1_sq, py::arg("sigma2_sq") = r.sigma2_sq,
                    py::arg("sigma0_sq") = r.sigma0_sq, py::arg("duality_gap") = r.duality_gap);
  }, py::arg("w1"), py::arg("w2"), py::arg("p"));

  m.def("mac_parameters", [](const Eigen::MatrixXd& w, const Eigen::VectorXd& p1, const Eigen::VectorXd& p2) {
    const auto r = mac_parameters(channel(w), dist(p1), dist(p2));
    return py::dict(py::arg("sigma1_sq") = r.sigma1_sq, py::arg("sigma2_sq") = r.sigma2_sq,
                    py::arg("sigma0_sq") = r.sigma0_sq);
  }, py::arg("w"), py::arg("p1"), py::arg("p2"), "Joint channel columns are x1-major.");

  m.def("ic_parameters", [](const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2,
                            const Eigen::VectorXd& p1, const Eigen::VectorXd& p2) {
    const auto ic = ic_marginals(channel(y1), channel(y2), dist(p1), dist(p2));
    return from_grid(ic_parameters_detailed(ic).grid.sigma_sq);
  }, py::arg("y1"), py::arg("y2"), py::arg("p1"), py::arg("p2"),
     "3x3 parameter grid from the joint channels to each receiver.");

  m.def("validate_grid", [](const Eigen::Matrix3d& g) {
    py::list out;
    for (const auto& v : validate_grid(to_grid(g))) out.append(py::make_tuple(v.chain, v.description));
    return out;
  }, py::arg("grid"));

  m.def("harmonic_mean", [](const std::vector<double>& v) { return harmonic_mean(v); }, py::arg("values"));

  m.def("best_path", [](const std::vector<Eigen::Matrix3d>& layers, int i, int j) {
    const auto net = to_network(layers);
    validate_network(net);
    const auto r = best_path(net, i, j);
    return py::make_tuple(r.sigma_sq, r.path);
  }, py::arg("layers"), py::arg("i"), py::arg("j"));

  m.def("sum_capacity", [](const std::vector<Eigen::Matrix3d>& layers) {
    const auto net = to_network(layers);
    validate_network(net);
    const auto r = sum_capacity(net);
    return py::make_tuple(r.value, r.path);
  }, py::arg("layers"));

  m.def("identical_layer_sum_capacity", [](const Eigen::Matrix3d& g) {
    const auto r = identical_layer_sum_capacity(to_grid(g));
    return py::make_tuple(r.value, r.label);
  }, py::arg("grid"));

  m.def("mode_values", [](const Eigen::Matrix3d& g) {
    const auto values = mode_values(to_grid(g));
    py::dict out;
    for (std::size_t k = 0; k < values.size(); ++k) out[fundamental_modes()[k].label] = values[k];
    return out;
  }, py::arg("grid"));

  m.def("feedback_ic_parameters", [](const Eigen::Matrix3d& g) {
    const auto r = feedback_ic_parameters(to_grid(g));
    return py::dict(py::arg("sigma10_fb_sq") = r.sigma10_fb_sq, py::arg("sigma20_fb_sq") = r.sigma20_fb_sq,
                    py::arg("route10") = to_string(r.route10), py::arg("route20") = to_string(r.route20));
  }, py::arg("grid"));

  m.def("feedback_identical_sum_capacity", [](const Eigen::Matrix3d& g) {
    const auto r = feedback_identical_sum_capacity(to_grid(g));
    return py::make_tuple(r.value, r.label);
  }, py::arg("grid"));

  m.def("repair_to_balanced", [](const Eigen::Matrix3d& delta, const Eigen::Matrix3d& g) {
    const IcParameterGrid grid = to_grid(g);
    const auto gs = GammaScheme::measure(Scheme{{to_grid(delta).sigma_sq}}, grid);
    const auto r = repair_to_balanced(gs, grid);
    return py::dict(py::arg("delta") = from_grid(r.scheme.delta[0]), py::arg("epsilon") = r.epsilon,
                    py::arg("max_change") = r.max_change, py::arg("change_bound") = r.change_bound,
                    py::arg("throughput_before") = r.throughput_before,
                    py::arg("throughput_after") = r.throughput_after, py::arg("case") = r.repair_case);
  }, py::arg("delta"), py::arg("grid"));

  m.def("run_command_json", [](const std::string& command, const std::string& document,
                               std::optional<double> alpha, bool certificates) {
    cli::CommandOptions options;
    options.alpha = alpha;
    options.certificates = certificates;
    const auto doc = cli::parse_document(document);
    py::gil_scoped_release release;
    return cli::run_command(command, doc, options).dump();
  }, py::arg("command"), py::arg("document"), py::arg("alpha") = py::none(),
     py::arg("certificates") = false, "Runs a CLI command on document text; returns JSON text.");
}
