#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "licnet/cli/commands.hpp"
#include "licnet/error.hpp"

namespace {

// One path per line; blank lines and lines starting with '#' are skipped.
// Relative paths are taken relative to the list file.
std::vector<std::string> read_batch(const std::string& list) {
  std::ifstream in(list);
  if (!in) throw licnet::Error(licnet::ErrorCode::InvalidArgument, "cannot read " + list);
  const auto base = std::filesystem::path(list).parent_path();
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::filesystem::path p(line);
    paths.push_back((p.is_absolute() ? p : base / p).string());
  }
  return paths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear information coupling models of interference networks"};
  std::string command, document, format = "json", batch;
  std::optional<double> alpha;
  bool certificates = false;

  app.add_option("command", command, "params | region | sumcap | allocate | feedback | modes | repair")
      ->required()
      ->check(CLI::IsMember(licnet::cli::command_names()));
  app.add_option("document", document, "network document (JSON)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--alpha", alpha, "value substituted for $alpha");
  app.add_flag("--certificates", certificates, "include optimal perturbation vectors");
  app.add_option("--batch", batch, "file listing documents to process");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cerr, std::cerr) == 0 && e.get_exit_code() == 0 ? 0 : 2;
  }
  if (document.empty() == batch.empty()) {
    std::cerr << "error: give exactly one of <document> or --batch\n";
    return 2;
  }

  licnet::cli::CommandOptions options;
  options.format = format == "csv" ? licnet::cli::Format::Csv : licnet::cli::Format::Json;
  options.alpha = alpha;
  options.certificates = certificates;

  try {
    if (!batch.empty()) {
      const auto entries = licnet::cli::run_batch(command, read_batch(batch), options);
      int status = 0;
      for (const auto& e : entries) {
        if (!e.result) {
          std::cerr << e.document << ": " << e.error << "\n";
          status = 1;
        }
      }
      std::cout << licnet::cli::format_result(licnet::cli::batch_to_json(entries), options.format);
      return status;
    }
    const auto result = licnet::cli::run_command(command, licnet::cli::load_document(document), options);
    std::cout << licnet::cli::format_result(result, options.format);
    return 0;
  } catch (const licnet::Error& e) {
    std::cerr << "error: " << licnet::to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
