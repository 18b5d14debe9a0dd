#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "licnet/grid.hpp"
#include "licnet/multihop.hpp"
#include "licnet/probability.hpp"

namespace licnet::cli {

// A matrix or vector entry: a literal or an expression over $alpha.
using Entry = std::variant<double, std::string>;
using EntryGrid = std::array<std::array<Entry, 3>, 3>;

struct MatrixSpec {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<Entry>> entries;  // row-major, rows x cols
};

// Wiring of named channels and distributions. Keys depend on the kind:
//   p2p:  w, p
//   bc:   w1, w2, p
//   mac:  w (joint, x1-major columns), p1, p2
//   ic:   y1, y2 (joint channels to each receiver), p1, p2
//         or w11, w12, w21, w22 (marginals Tx i -> Rx j), p1, p2
using Wiring = std::map<std::string, std::string>;

// One layer of a layered network: an inline grid or an interference channel.
using LayerSpec = std::variant<EntryGrid, Wiring>;

enum class Kind { P2p, Bc, Mac, Ic, Layered };

std::string to_string(Kind kind);

struct NetworkDocument {
  int version = 1;
  Kind kind = Kind::P2p;
  std::map<std::string, MatrixSpec> channels;
  std::map<std::string, std::vector<Entry>> input_dists;
  Wiring structure;
  std::vector<LayerSpec> layers;
  std::optional<bool> feedback;
  std::optional<double> alpha;            // default for $alpha
  std::optional<bool> identical_layers;   // single layer repeated without bound
  std::optional<EntryGrid> scheme;        // single-layer delta for `repair`

  bool uses_alpha() const;
};

// Throws SyntaxError (with line and column), SchemaError (with the JSON
// pointer of the field) or ValidationError.
NetworkDocument parse_document(std::string_view text);
NetworkDocument load_document(const std::string& path);

// Canonical JSON text: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const NetworkDocument& doc);
// Canonical form of arbitrary document text, for round-trip comparisons.
std::string canonicalize(std::string_view text);

// Document with every expression evaluated.
struct ResolvedDocument {
  Kind kind;
  std::map<std::string, ChannelMatrix> channels;
  std::map<std::string, ProbabilityVector> input_dists;
  Wiring structure;
  // For layered documents, one entry per layer; layers given as channels are
  // reduced to their parameter grids.
  LayeredNetwork network;
  bool feedback;
  bool identical_layers;
  std::optional<Grid3> scheme;
};

// Evaluates expressions with the override taking precedence over the
// document's alpha. Throws ValidationError for out-of-range values and for
// inline grids that break a structural chain.
ResolvedDocument resolve(const NetworkDocument& doc, std::optional<double> alpha_override);

}  // namespace licnet::cli
