#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "licnet/cli/document.hpp"

namespace licnet::cli {

enum class Format { Json, Csv };

struct CommandOptions {
  Format format = Format::Json;
  std::optional<double> alpha;
  bool certificates = false;
};

// params, region, sumcap, allocate, feedback, modes, repair
const std::vector<std::string>& command_names();

// Throws InvalidArgument for unknown commands or commands that do not apply
// to the document kind; module errors propagate unchanged.
nlohmann::json run_command(const std::string& command, const NetworkDocument& doc,
                           const CommandOptions& options);

// Rounds every floating-point value to 12 significant digits.
nlohmann::json round_numbers(const nlohmann::json& value);

// JSON text or `quantity,value` CSV with dotted quantity paths.
std::string format_result(const nlohmann::json& result, Format format);

struct BatchEntry {
  std::string document;
  std::optional<nlohmann::json> result;
  std::string error;  // "Code: message" when result is empty
};

// Runs one command over many documents concurrently; entries keep the input
// order.
std::vector<BatchEntry> run_batch(const std::string& command, const std::vector<std::string>& paths,
                                  const CommandOptions& options);

nlohmann::json batch_to_json(const std::vector<BatchEntry>& entries);

}  // namespace licnet::cli
