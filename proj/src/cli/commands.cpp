#include "licnet/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "licnet/error.hpp"
#include "licnet/feedback.hpp"
#include "licnet/model.hpp"
#include "licnet/multihop.hpp"
#include "licnet/singlehop.hpp"

namespace licnet::cli {

using nlohmann::json;

namespace {

[[noreturn]] void not_applicable(const std::string& command, Kind kind) {
  throw Error(ErrorCode::InvalidArgument,
              "command " + command + " does not apply to " + to_string(kind) + " documents");
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json grid_json(const IcParameterGrid& g) {
  json out = json::object();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[message_label(i, j)] = g(i, j);
  }
  return out;
}

json delta_json(const Grid3& d) {
  json out = json::array();
  for (const auto& row : d) out.push_back(json(std::vector<double>(row.begin(), row.end())));
  return out;
}

json map_json(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

json path_json(const Path& p) { return json(std::vector<int>(p.begin(), p.end())); }

const ChannelMatrix& channel(const ResolvedDocument& r, const std::string& key) {
  return r.channels.at(r.structure.at(key));
}

const ProbabilityVector& dist(const ResolvedDocument& r, const std::string& key) {
  return r.input_dists.at(r.structure.at(key));
}

IcChannels ic_channels(const ResolvedDocument& r) {
  if (r.structure.contains("y1")) {
    return ic_marginals(channel(r, "y1"), channel(r, "y2"), dist(r, "p1"), dist(r, "p2"));
  }
  return {channel(r, "w11"), channel(r, "w12"), channel(r, "w21"), channel(r, "w22"),
          dist(r, "p1"), dist(r, "p2")};
}

// Parameter set and message labels for the single-hop kinds.
ParameterSet single_hop_parameters(const ResolvedDocument& r) {
  switch (r.kind) {
    case Kind::P2p: return {{"1", p2p_parameter(channel(r, "w"), dist(r, "p")).sigma_sq}};
    case Kind::Bc: {
      const auto bc = bc_parameters(channel(r, "w1"), channel(r, "w2"), dist(r, "p"));
      return broadcast_parameters(bc.sigma1_sq, bc.sigma2_sq, bc.sigma0_sq);
    }
    case Kind::Mac: {
      const auto mac = mac_parameters(channel(r, "w"), dist(r, "p1"), dist(r, "p2"));
      return broadcast_parameters(mac.sigma1_sq, mac.sigma2_sq, mac.sigma0_sq);
    }
    case Kind::Ic: return grid_parameters(ic_parameters_detailed(ic_channels(r)).grid);
    case Kind::Layered: break;
  }
  throw Error(ErrorCode::InvalidArgument, "not a single-hop document");
}

// The one grid a command works on: the ic grid, or the only layer of a
// layered document (any layer count is accepted for identical layers).
IcParameterGrid single_grid(const ResolvedDocument& r, const std::string& command) {
  if (r.kind == Kind::Ic) return ic_parameters_detailed(ic_channels(r)).grid;
  if (r.kind == Kind::Layered) {
    if (r.network.size() == 1 || r.identical_layers) {
      for (const auto& layer : r.network.layers) {
        if (!(layer == r.network.layers.front())) {
          throw Error(ErrorCode::InvalidArgument, "identical_layers is set but the layers differ");
        }
      }
      return r.network.layers.front();
    }
    throw Error(ErrorCode::InvalidArgument,
                "command " + command + " needs a single grid; the document has " +
                    std::to_string(r.network.size()) + " layers");
  }
  not_applicable(command, r.kind);
}

// Scheme that sends the sum-capacity flow along a path, one link per layer.
Scheme path_scheme(const LayeredNetwork& net, const SumCapacityResult& sc) {
  Scheme s{std::vector<Grid3>(net.size(), Grid3{})};
  for (std::size_t l = 0; l < net.size(); ++l) {
    const int a = sc.path[l], b = sc.path[l + 1];
    const double sigma = net.layers[l](a, b);
    if (sigma > 0.0) s.delta[l][a][b] = sc.value / sigma;
  }
  return s;
}

json scheme_json(const Scheme& s, const LayeredNetwork& net) {
  json layers = json::array();
  for (const auto& d : s.delta) layers.push_back(delta_json(d));
  const auto imbalance = flow_imbalance(s, net);
  return {{"delta", layers},
          {"normalized_budget", s.normalized_budget()},
          {"throughput", throughput(s, net)},
          {"gamma", imbalance.gamma},
          {"max_residual", imbalance.max_residual}};
}

json cmd_params(const ResolvedDocument& r, const CommandOptions& o) {
  json out{{"kind", to_string(r.kind)}};
  switch (r.kind) {
    case Kind::P2p: {
      const auto res = p2p_parameter(channel(r, "w"), dist(r, "p"));
      out["sigma_sq"] = res.sigma_sq;
      out["degenerate"] = res.solution.degenerate;
      if (o.certificates) out["certificates"] = {{"1", vector_json(res.solution.vector.entries())}};
      break;
    }
    case Kind::Bc: {
      const auto bc = bc_parameters(channel(r, "w1"), channel(r, "w2"), dist(r, "p"));
      out["sigma_sq"] = {{"1", bc.sigma1_sq}, {"2", bc.sigma2_sq}, {"0", bc.sigma0_sq}};
      out["time_share_rate"] = time_share_rate(bc.sigma1_sq, bc.sigma2_sq);
      out["duality_gap"] = bc.duality_gap;
      if (o.certificates) {
        out["certificates"] = {{"1", vector_json(bc.l1.entries())},
                               {"2", vector_json(bc.l2.entries())},
                               {"0", vector_json(bc.l0.entries())}};
      }
      break;
    }
    case Kind::Mac: {
      const auto mac = mac_parameters(channel(r, "w"), dist(r, "p1"), dist(r, "p2"));
      out["sigma_sq"] = {{"1", mac.sigma1_sq}, {"2", mac.sigma2_sq}, {"0", mac.sigma0_sq}};
      if (o.certificates) {
        out["certificates"] = {{"1", vector_json(mac.l1.entries())},
                               {"2", vector_json(mac.l2.entries())},
                               {"0", vector_json(mac.l0.entries())}};
      }
      break;
    }
    case Kind::Ic: {
      const auto ic = ic_parameters_detailed(ic_channels(r));
      out["sigma_sq"] = grid_json(ic.grid);
      out["max_duality_gap"] = ic.max_duality_gap;
      json violations = json::array();
      for (const auto& v : validate_grid(ic.grid)) {
        violations.push_back({{"chain", v.chain}, {"description", v.description}});
      }
      out["violations"] = violations;
      if (o.certificates) {
        json certs = json::object();
        for (const auto& [label, l] : ic.certificates) certs[label] = vector_json(l.entries());
        out["certificates"] = certs;
      }
      break;
    }
    case Kind::Layered: {
      json layers = json::array();
      for (const auto& g : r.network.layers) layers.push_back(grid_json(g));
      out["layers"] = layers;
      validate_network(r.network);
      if (!r.identical_layers) {
        json region = json::object(), paths = json::object();
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            const auto bp = best_path(r.network, i, j);
            region[message_label(i, j)] = bp.sigma_sq;
            paths[message_label(i, j)] = path_json(bp.path);
          }
        }
        out["region_sigma_sq"] = region;
        out["paths"] = paths;
      }
      break;
    }
  }
  return out;
}

json cmd_region(const ResolvedDocument& r) {
  ParameterSet params;
  double budget = 1.0;
  if (r.kind == Kind::Layered) {
    validate_network(r.network);
    params = grid_parameters(layered_region_params(r.network));
    budget = static_cast<double>(r.network.size());
  } else {
    params = single_hop_parameters(r);
  }
  json vertices = json::array();
  for (const auto& v : rate_region_vertices(params, budget)) vertices.push_back(map_json(v));
  return {{"budget", budget}, {"sigma_sq", map_json(params)}, {"vertices", vertices}};
}

json identical_sumcap(const IcParameterGrid& g, bool feedback) {
  const ModeResult m = feedback ? feedback_identical_sum_capacity(g) : identical_layer_sum_capacity(g);
  return {{"value", m.value}, {"mode", m.label}};
}

json cmd_sumcap(const ResolvedDocument& r) {
  if (r.kind != Kind::Layered) {
    if (r.kind == Kind::Ic) {
      const auto sc = ic_sum_capacity(ic_parameters_detailed(ic_channels(r)).grid);
      return {{"value", sc.value}, {"allocation", map_json(sc.allocation)}};
    }
    const auto params = single_hop_parameters(r);
    std::map<std::string, double> mu;
    for (const auto& [label, _] : params) mu[label] = 1.0;
    const auto sc = mu_sum_rate(params, mu, 1.0);
    return {{"value", sc.value}, {"allocation", map_json(sc.allocation)}};
  }
  json out;
  if (r.identical_layers) {
    const IcParameterGrid g = single_grid(r, "sumcap");
    out = identical_sumcap(g, false);
    out["scheme"] = scheme_json(mode_allocation(g, out["mode"]), LayeredNetwork{{g}});
    if (r.feedback) out["feedback"] = identical_sumcap(g, true);
  } else {
    validate_network(r.network);
    const auto sc = sum_capacity(r.network);
    out = {{"value", sc.value}, {"path", path_json(sc.path)}};
    if (r.feedback) {
      const auto fb = feedback_sum_capacity(r.network);
      out["feedback"] = {{"value", fb.value}, {"path", path_json(fb.path)}};
    }
  }
  return out;
}

json cmd_allocate(const ResolvedDocument& r) {
  if (r.kind == Kind::Layered) {
    if (r.identical_layers) {
      const IcParameterGrid g = single_grid(r, "allocate");
      const auto m = identical_layer_sum_capacity(g);
      json out = scheme_json(mode_allocation(g, m.label), LayeredNetwork{{g}});
      out["mode"] = m.label;
      return out;
    }
    validate_network(r.network);
    const auto sc = sum_capacity(r.network);
    json out = scheme_json(path_scheme(r.network, sc), r.network);
    out["path"] = path_json(sc.path);
    return out;
  }
  if (r.kind == Kind::Ic) {
    const IcParameterGrid g = ic_parameters_detailed(ic_channels(r)).grid;
    const auto sc = ic_sum_capacity(g);
    Scheme s{{Grid3{}}};
    for (const auto& [label, delta] : sc.allocation) s.delta[0][label[0] - '0'][label[1] - '0'] = delta;
    return scheme_json(s, LayeredNetwork{{g}});
  }
  const auto params = single_hop_parameters(r);
  std::map<std::string, double> mu;
  for (const auto& [label, _] : params) mu[label] = 1.0;
  const auto sc = mu_sum_rate(params, mu, 1.0);
  return {{"delta", map_json(sc.allocation)}, {"throughput", sc.value}};
}

json cmd_feedback(const ResolvedDocument& r) {
  if (r.kind != Kind::Ic && r.kind != Kind::Layered) not_applicable("feedback", r.kind);
  if (r.kind == Kind::Layered && !r.identical_layers && r.network.size() > 1) {
    validate_network(r.network);
    json layers = json::array();
    for (const auto& g : r.network.layers) {
      const auto fb = feedback_substitution(g);
      layers.push_back({{"sigma10_fb_sq", fb.sigma10_fb_sq},
                        {"sigma20_fb_sq", fb.sigma20_fb_sq},
                        {"route10", to_string(fb.route10)},
                        {"route20", to_string(fb.route20)}});
    }
    const auto sc = sum_capacity(r.network);
    const auto fb = feedback_sum_capacity(r.network);
    return {{"layers", layers},
            {"region_sigma_sq", grid_json(feedback_layered_region_params(r.network))},
            {"sum_capacity", fb.value},
            {"path", path_json(fb.path)},
            {"nonfeedback_sum_capacity", sc.value}};
  }
  const IcParameterGrid g = single_grid(r, "feedback");
  const auto fb = feedback_ic_parameters(g);
  json out{{"sigma10_fb_sq", fb.sigma10_fb_sq},
           {"sigma20_fb_sq", fb.sigma20_fb_sq},
           {"route10", to_string(fb.route10)},
           {"route20", to_string(fb.route20)},
           {"sigma_sq", grid_json(fb.substituted())}};
  if (r.kind == Kind::Layered && r.identical_layers) {
    const auto with = feedback_identical_sum_capacity(g);
    const auto without = identical_layer_sum_capacity(g);
    out["sum_capacity"] = with.value;
    out["mode"] = with.label;
    out["nonfeedback_sum_capacity"] = without.value;
    out["nonfeedback_mode"] = without.label;
  } else {
    const LayeredNetwork single{{g}};
    out["sum_capacity"] = feedback_sum_capacity(single).value;
    out["nonfeedback_sum_capacity"] = sum_capacity(single).value;
  }
  return out;
}

json cmd_modes(const ResolvedDocument& r) {
  const IcParameterGrid g = single_grid(r, "modes");
  require_valid_grid(g, "modes");
  const auto values = mode_values(g);
  json modes = json::object();
  for (std::size_t m = 0; m < values.size(); ++m) modes[fundamental_modes()[m].label] = values[m];
  const auto best = best_mode(g);
  return {{"modes", modes}, {"best", best.label}, {"value", best.value}};
}

json cmd_repair(const ResolvedDocument& r) {
  if (!r.scheme) throw Error(ErrorCode::InvalidArgument, "repair needs a \"scheme\" in the document");
  const IcParameterGrid g = single_grid(r, "repair");
  require_valid_grid(g, "repair");
  const auto gs = GammaScheme::measure(Scheme{{*r.scheme}}, g);
  const auto res = repair_to_balanced(gs, g);
  return {{"delta", delta_json(res.scheme.delta[0])},
          {"epsilon", res.epsilon},
          {"max_change", res.max_change},
          {"change_bound", res.change_bound},
          {"throughput_before", res.throughput_before},
          {"throughput_after", res.throughput_after},
          {"loss_bound", res.loss_bound},
          {"case", res.repair_case},
          {"relabel", json(std::vector<int>(res.relabel.begin(), res.relabel.end()))},
          {"reversed", res.reversed},
          {"gamma_after", flow_imbalance(res.scheme, g).gamma}};
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  const auto join = [&](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, join(k), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], join(std::to_string(i)), out);
  } else {
    std::string value;
    if (j.is_number_float()) {
      value = format_number(j.get<double>());
    } else if (j.is_string()) {
      value = j.get<std::string>();
    } else if (!j.is_null()) {
      value = j.dump();
    }
    out << csv_field(prefix) << ',' << csv_field(value) << '\n';
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"params", "region", "sumcap", "allocate",
                                              "feedback", "modes", "repair"};
  return names;
}

json run_command(const std::string& command, const NetworkDocument& doc, const CommandOptions& options) {
  const auto known = command_names();
  if (std::find(known.begin(), known.end(), command) == known.end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown command " + command);
  }
  const ResolvedDocument r = resolve(doc, options.alpha);
  json out;
  if (command == "params") {
    out = cmd_params(r, options);
  } else if (command == "region") {
    out = cmd_region(r);
  } else if (command == "sumcap") {
    out = cmd_sumcap(r);
  } else if (command == "allocate") {
    out = cmd_allocate(r);
  } else if (command == "feedback") {
    out = cmd_feedback(r);
  } else if (command == "modes") {
    out = cmd_modes(r);
  } else {
    out = cmd_repair(r);
  }
  return round_numbers(out);
}

json round_numbers(const json& value) {
  if (value.is_number_float()) return std::stod(format_number(value.get<double>()));
  if (value.is_structured()) {
    json out = value;
    for (auto& child : out) child = round_numbers(child);
    return out;
  }
  return value;
}

std::string format_result(const json& result, Format format) {
  if (format == Format::Json) return result.dump(2) + "\n";
  std::ostringstream out;
  out << "quantity,value\n";
  flatten(result, "", out);
  return out.str();
}

std::vector<BatchEntry> run_batch(const std::string& command, const std::vector<std::string>& paths,
                                  const CommandOptions& options) {
  std::vector<std::future<BatchEntry>> jobs;
  jobs.reserve(paths.size());
  for (const auto& path : paths) {
    jobs.push_back(std::async(std::launch::async, [&command, &options, path] {
      BatchEntry e{path, std::nullopt, {}};
      try {
        e.result = run_command(command, load_document(path), options);
      } catch (const Error& err) {
        e.error = std::string(to_string(err.code())) + ": " + err.what();
      } catch (const std::exception& err) {
        e.error = err.what();
      }
      return e;
    }));
  }
  std::vector<BatchEntry> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

json batch_to_json(const std::vector<BatchEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    json item{{"document", e.document}};
    if (e.result) {
      item["result"] = *e.result;
    } else {
      item["error"] = e.error;
    }
    out.push_back(item);
  }
  return out;
}

}  // namespace licnet::cli
