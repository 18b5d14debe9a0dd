#include "licnet/cli/document.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "licnet/cli/expression.hpp"
#include "licnet/error.hpp"
#include "licnet/singlehop.hpp"

namespace licnet::cli {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

[[noreturn]] void validation_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ValidationError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

std::string child(const std::string& pointer, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return pointer + "/" + escaped;
}

std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

const json& require(const json& obj, const std::string& pointer, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(pointer, "missing field \"" + key + "\"");
  return *it;
}

void require_keys(const json& obj, const std::string& pointer, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) schema_error(child(pointer, key), "unknown field");
  }
}

void expect(bool ok, const std::string& pointer, const std::string& what) {
  if (!ok) schema_error(pointer, "expected " + what);
}

Entry parse_entry(const json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    // Surface grammar errors at parse time; alpha may still be unbound.
    try {
      evaluate_expression(text, 0.5);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SyntaxError) schema_error(pointer, e.what());
    }
    return text;
  }
  schema_error(pointer, "expected a number or an expression string");
}

std::vector<Entry> parse_entry_list(const json& j, const std::string& pointer) {
  expect(j.is_array(), pointer, "an array");
  std::vector<Entry> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_entry(j[i], child(pointer, i)));
  return out;
}

EntryGrid parse_entry_grid(const json& j, const std::string& pointer) {
  expect(j.is_array() && j.size() == 3, pointer, "a 3x3 array");
  EntryGrid g;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row_ptr = child(pointer, i);
    expect(j[i].is_array() && j[i].size() == 3, row_ptr, "a row of 3 entries");
    for (std::size_t k = 0; k < 3; ++k) g[i][k] = parse_entry(j[i][k], child(row_ptr, k));
  }
  return g;
}

MatrixSpec parse_matrix(const json& j, const std::string& pointer) {
  expect(j.is_object(), pointer, "an object");
  require_keys(j, pointer, {"rows", "cols", "entries"});
  MatrixSpec m;
  const auto& rows = require(j, pointer, "rows");
  const auto& cols = require(j, pointer, "cols");
  expect(rows.is_number_integer() && rows.get<int>() > 0, child(pointer, "rows"), "a positive integer");
  expect(cols.is_number_integer() && cols.get<int>() > 0, child(pointer, "cols"), "a positive integer");
  m.rows = rows.get<int>();
  m.cols = cols.get<int>();
  const auto entries_ptr = child(pointer, "entries");
  const auto& entries = require(j, pointer, "entries");
  expect(entries.is_array(), entries_ptr, "an array of rows");
  if (static_cast<int>(entries.size()) != m.rows) {
    validation_error(entries_ptr, "has " + std::to_string(entries.size()) + " rows, declared " +
                                      std::to_string(m.rows));
  }
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const auto row_ptr = child(entries_ptr, r);
    auto row = parse_entry_list(entries[r], row_ptr);
    if (static_cast<int>(row.size()) != m.cols) {
      validation_error(row_ptr, "has " + std::to_string(row.size()) + " entries, declared " +
                                    std::to_string(m.cols));
    }
    m.entries.push_back(std::move(row));
  }
  return m;
}

Wiring parse_wiring(const json& j, const std::string& pointer) {
  expect(j.is_object(), pointer, "an object of names");
  Wiring w;
  for (const auto& [key, value] : j.items()) {
    expect(value.is_string(), child(pointer, key), "a name");
    w[key] = value.get<std::string>();
  }
  return w;
}

std::optional<Kind> kind_from(const std::string& s) {
  if (s == "p2p") return Kind::P2p;
  if (s == "bc") return Kind::Bc;
  if (s == "mac") return Kind::Mac;
  if (s == "ic") return Kind::Ic;
  if (s == "layered") return Kind::Layered;
  return std::nullopt;
}

// Required wiring keys per kind; ic accepts either of two sets.
std::vector<std::vector<std::string>> wiring_forms(Kind kind) {
  switch (kind) {
    case Kind::P2p: return {{"w", "p"}};
    case Kind::Bc: return {{"w1", "w2", "p"}};
    case Kind::Mac: return {{"w", "p1", "p2"}};
    case Kind::Ic: return {{"y1", "y2", "p1", "p2"}, {"w11", "w12", "w21", "w22", "p1", "p2"}};
    case Kind::Layered: return {};
  }
  return {};
}

bool is_distribution_key(const std::string& key) { return key.front() == 'p'; }

void check_wiring(const Wiring& w, Kind kind, const std::string& pointer, const NetworkDocument& doc) {
  const auto forms = wiring_forms(kind);
  const auto matches = [&](const std::vector<std::string>& form) {
    if (w.size() != form.size()) return false;
    return std::all_of(form.begin(), form.end(), [&](const std::string& k) { return w.contains(k); });
  };
  if (std::none_of(forms.begin(), forms.end(), matches)) {
    std::string expected;
    for (const auto& form : forms) {
      if (!expected.empty()) expected += " or ";
      std::string keys;
      for (const auto& k : form) keys += (keys.empty() ? "" : ", ") + k;
      expected += "{" + keys + "}";
    }
    schema_error(pointer, "expected keys " + expected + " for kind " + to_string(kind));
  }
  for (const auto& [key, name] : w) {
    const bool dist = is_distribution_key(key);
    const bool found = dist ? doc.input_dists.contains(name) : doc.channels.contains(name);
    if (!found) {
      validation_error(child(pointer, key), std::string("unknown ") +
                                                (dist ? "input distribution" : "channel") + " \"" +
                                                name + "\"");
    }
  }

  const auto cols = [&](const std::string& key) { return doc.channels.at(w.at(key)).cols; };
  const auto rows = [&](const std::string& key) { return doc.channels.at(w.at(key)).rows; };
  const auto size = [&](const std::string& key) {
    return static_cast<int>(doc.input_dists.at(w.at(key)).size());
  };
  const auto need = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) validation_error(child(pointer, key), what);
  };
  switch (kind) {
    case Kind::P2p:
      need(cols("w") == size("p"), "w", "channel has " + std::to_string(cols("w")) +
                                            " inputs but p has " + std::to_string(size("p")) + " symbols");
      break;
    case Kind::Bc:
      need(cols("w1") == size("p"), "w1", "channel inputs differ from the size of p");
      need(cols("w2") == size("p"), "w2", "channel inputs differ from the size of p");
      break;
    case Kind::Mac:
      need(cols("w") == size("p1") * size("p2"), "w", "joint channel needs |X1|*|X2| columns");
      break;
    case Kind::Ic:
      if (w.contains("y1")) {
        need(cols("y1") == size("p1") * size("p2"), "y1", "joint channel needs |X1|*|X2| columns");
        need(cols("y2") == size("p1") * size("p2"), "y2", "joint channel needs |X1|*|X2| columns");
      } else {
        need(cols("w11") == size("p1"), "w11", "channel inputs differ from the size of p1");
        need(cols("w12") == size("p1"), "w12", "channel inputs differ from the size of p1");
        need(cols("w21") == size("p2"), "w21", "channel inputs differ from the size of p2");
        need(cols("w22") == size("p2"), "w22", "channel inputs differ from the size of p2");
        need(rows("w11") == rows("w21"), "w21", "receiver 1 alphabets differ");
        need(rows("w12") == rows("w22"), "w22", "receiver 2 alphabets differ");
      }
      break;
    case Kind::Layered: break;
  }
}

double evaluate(const Entry& e, std::optional<double> alpha) {
  if (const double* v = std::get_if<double>(&e)) return *v;
  return evaluate_expression(std::get<std::string>(e), alpha);
}

bool entry_uses_alpha(const Entry& e) {
  const auto* s = std::get_if<std::string>(&e);
  return s && cli::uses_alpha(*s);
}

bool grid_is_literal(const EntryGrid& g) {
  for (const auto& row : g) {
    for (const auto& e : row) {
      if (!std::holds_alternative<double>(e)) return false;
    }
  }
  return true;
}

Grid3 evaluate_grid(const EntryGrid& g, std::optional<double> alpha) {
  Grid3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = evaluate(g[i][j], alpha);
  }
  return out;
}

void check_inline_grid(const Grid3& sigma, const std::string& pointer) {
  const auto violations = validate_grid(IcParameterGrid{sigma});
  if (!violations.empty()) {
    const auto& v = violations.front();
    validation_error(pointer, "grid breaks chain " + std::to_string(v.chain) + ": " + v.description);
  }
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json entry_json(const Entry& e) {
  if (const double* v = std::get_if<double>(&e)) return *v;
  return std::get<std::string>(e);
}

json grid_json(const EntryGrid& g) {
  json out = json::array();
  for (const auto& row : g) {
    json r = json::array();
    for (const auto& e : row) r.push_back(entry_json(e));
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::P2p: return "p2p";
    case Kind::Bc: return "bc";
    case Kind::Mac: return "mac";
    case Kind::Ic: return "ic";
    case Kind::Layered: return "layered";
  }
  return "unknown";
}

bool NetworkDocument::uses_alpha() const {
  const auto any = [](const auto& entries) {
    return std::any_of(entries.begin(), entries.end(), entry_uses_alpha);
  };
  for (const auto& [_, m] : channels) {
    for (const auto& row : m.entries) {
      if (any(row)) return true;
    }
  }
  for (const auto& [_, p] : input_dists) {
    if (any(p)) return true;
  }
  for (const auto& layer : layers) {
    if (const auto* g = std::get_if<EntryGrid>(&layer)) {
      for (const auto& row : *g) {
        if (any(row)) return true;
      }
    }
  }
  if (scheme) {
    for (const auto& row : *scheme) {
      if (any(row)) return true;
    }
  }
  return false;
}

NetworkDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + " column " + std::to_string(col) + ": " + what);
  }
  expect(root.is_object(), "", "a JSON object at the top level");
  require_keys(root, "", {"version", "kind", "channels", "input_dists", "structure", "layers",
                          "feedback", "alpha", "identical_layers", "scheme"});

  NetworkDocument doc;
  const auto& version = require(root, "", "version");
  expect(version.is_number_integer(), "/version", "an integer");
  doc.version = version.get<int>();
  if (doc.version != 1) validation_error("/version", "unsupported version " + std::to_string(doc.version));

  const auto& kind = require(root, "", "kind");
  expect(kind.is_string(), "/kind", "a string");
  const auto parsed_kind = kind_from(kind.get<std::string>());
  if (!parsed_kind) schema_error("/kind", "expected one of p2p, bc, mac, ic, layered");
  doc.kind = *parsed_kind;

  if (root.contains("channels")) {
    const auto& channels = root["channels"];
    expect(channels.is_object(), "/channels", "an object");
    for (const auto& [name, m] : channels.items()) {
      doc.channels[name] = parse_matrix(m, child("/channels", name));
    }
  }
  if (root.contains("input_dists")) {
    const auto& dists = root["input_dists"];
    expect(dists.is_object(), "/input_dists", "an object");
    for (const auto& [name, p] : dists.items()) {
      const auto ptr = child("/input_dists", name);
      doc.input_dists[name] = parse_entry_list(p, ptr);
      if (doc.input_dists[name].empty()) validation_error(ptr, "empty distribution");
    }
  }
  if (root.contains("structure")) doc.structure = parse_wiring(root["structure"], "/structure");
  if (root.contains("feedback")) {
    expect(root["feedback"].is_boolean(), "/feedback", "a boolean");
    doc.feedback = root["feedback"].get<bool>();
  }
  if (root.contains("identical_layers")) {
    expect(root["identical_layers"].is_boolean(), "/identical_layers", "a boolean");
    doc.identical_layers = root["identical_layers"].get<bool>();
  }
  if (root.contains("alpha")) {
    expect(root["alpha"].is_number(), "/alpha", "a number");
    doc.alpha = root["alpha"].get<double>();
  }
  if (root.contains("scheme")) {
    const auto& s = root["scheme"];
    expect(s.is_object(), "/scheme", "an object");
    require_keys(s, "/scheme", {"delta"});
    doc.scheme = parse_entry_grid(require(s, "/scheme", "delta"), "/scheme/delta");
  }

  if (doc.kind == Kind::Layered) {
    if (!doc.structure.empty()) schema_error("/structure", "not used by layered documents");
    const auto& layers = require(root, "", "layers");
    expect(layers.is_array() && !layers.empty(), "/layers", "a non-empty array");
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto ptr = child("/layers", l);
      const auto& layer = layers[l];
      expect(layer.is_object() && layer.size() == 1 &&
                 (layer.contains("sigma_sq") || layer.contains("ic")),
             ptr, "{\"sigma_sq\": grid} or {\"ic\": wiring}");
      if (layer.contains("sigma_sq")) {
        doc.layers.emplace_back(parse_entry_grid(layer["sigma_sq"], child(ptr, "sigma_sq")));
      } else {
        Wiring w = parse_wiring(layer["ic"], child(ptr, "ic"));
        check_wiring(w, Kind::Ic, child(ptr, "ic"), doc);
        doc.layers.emplace_back(std::move(w));
      }
    }
  } else {
    if (root.contains("layers")) schema_error("/layers", "only used by layered documents");
    if (!root.contains("structure")) schema_error("", "missing field \"structure\"");
    check_wiring(doc.structure, doc.kind, "/structure", doc);
  }

  // Literal inline grids can be checked without alpha.
  for (std::size_t l = 0; l < doc.layers.size(); ++l) {
    if (const auto* g = std::get_if<EntryGrid>(&doc.layers[l]); g && grid_is_literal(*g)) {
      check_inline_grid(evaluate_grid(*g, std::nullopt), child(child("/layers", l), "sigma_sq"));
    }
  }
  return doc;
}

NetworkDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string serialize_document(const NetworkDocument& doc) {
  json root;
  root["version"] = doc.version;
  root["kind"] = to_string(doc.kind);
  if (!doc.channels.empty()) {
    json channels = json::object();
    for (const auto& [name, m] : doc.channels) {
      json entries = json::array();
      for (const auto& row : m.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(entry_json(e));
        entries.push_back(r);
      }
      channels[name] = {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
    }
    root["channels"] = channels;
  }
  if (!doc.input_dists.empty()) {
    json dists = json::object();
    for (const auto& [name, p] : doc.input_dists) {
      json list = json::array();
      for (const auto& e : p) list.push_back(entry_json(e));
      dists[name] = list;
    }
    root["input_dists"] = dists;
  }
  if (!doc.structure.empty()) root["structure"] = doc.structure;
  if (doc.kind == Kind::Layered) {
    json layers = json::array();
    for (const auto& layer : doc.layers) {
      if (const auto* g = std::get_if<EntryGrid>(&layer)) {
        layers.push_back({{"sigma_sq", grid_json(*g)}});
      } else {
        layers.push_back({{"ic", std::get<Wiring>(layer)}});
      }
    }
    root["layers"] = layers;
  }
  if (doc.feedback) root["feedback"] = *doc.feedback;
  if (doc.alpha) root["alpha"] = *doc.alpha;
  if (doc.identical_layers) root["identical_layers"] = *doc.identical_layers;
  if (doc.scheme) root["scheme"] = {{"delta", grid_json(*doc.scheme)}};
  return root.dump(2) + "\n";
}

std::string canonicalize(std::string_view text) {
  json root = json::parse(text);
  // Integral-valued floats and integers compare as the same number.
  const std::function<void(json&)> normalize = [&](json& j) {
    if (j.is_number() && !j.is_number_integer()) {
      const double v = j.get<double>();
      j = v;
    } else if (j.is_structured()) {
      for (auto& child_value : j) normalize(child_value);
    }
  };
  normalize(root);
  return root.dump(2) + "\n";
}

ResolvedDocument resolve(const NetworkDocument& doc, std::optional<double> alpha_override) {
  const std::optional<double> alpha = alpha_override ? alpha_override : doc.alpha;
  ResolvedDocument r;
  r.kind = doc.kind;
  r.structure = doc.structure;
  r.feedback = doc.feedback.value_or(false);
  r.identical_layers = doc.identical_layers.value_or(false);

  for (const auto& [name, m] : doc.channels) {
    const auto ptr = child("/channels", name);
    Eigen::MatrixXd raw(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) raw(i, j) = evaluate(m.entries[i][j], alpha);
    }
    try {
      r.channels.emplace(name, ChannelMatrix::from(raw));
    } catch (const Error& e) {
      validation_error(ptr, std::string(licnet::to_string(e.code())) + ": " + e.what());
    }
  }
  for (const auto& [name, p] : doc.input_dists) {
    const auto ptr = child("/input_dists", name);
    Eigen::VectorXd raw(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) raw(static_cast<Eigen::Index>(i)) = evaluate(p[i], alpha);
    try {
      r.input_dists.emplace(name, validate_distribution(raw));
    } catch (const Error& e) {
      validation_error(ptr, std::string(licnet::to_string(e.code())) + ": " + e.what());
    }
  }

  for (std::size_t l = 0; l < doc.layers.size(); ++l) {
    const auto ptr = child("/layers", l);
    if (const auto* g = std::get_if<EntryGrid>(&doc.layers[l])) {
      const Grid3 sigma = evaluate_grid(*g, alpha);
      check_inline_grid(sigma, child(ptr, "sigma_sq"));
      r.network.layers.push_back(IcParameterGrid{sigma});
    } else {
      const auto& w = std::get<Wiring>(doc.layers[l]);
      const auto ch = [&](const std::string& key) { return r.channels.at(w.at(key)); };
      const auto& p1 = r.input_dists.at(w.at("p1"));
      const auto& p2 = r.input_dists.at(w.at("p2"));
      const IcChannels ic = w.contains("y1")
                                ? ic_marginals(ch("y1"), ch("y2"), p1, p2)
                                : IcChannels{ch("w11"), ch("w12"), ch("w21"), ch("w22"), p1, p2};
      r.network.layers.push_back(ic_parameters_detailed(ic).grid);
    }
  }
  if (doc.scheme) r.scheme = evaluate_grid(*doc.scheme, alpha);
  return r;
}

}  // namespace licnet::cli
