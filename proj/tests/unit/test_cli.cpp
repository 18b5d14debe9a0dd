#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "licnet/cli/commands.hpp"
#include "licnet/cli/document.hpp"
#include "licnet/cli/expression.hpp"
#include "licnet/error.hpp"

using namespace licnet;
using namespace licnet::cli;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::InvalidArgument, "");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<fs::path> document_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(LICNET_DOCUMENTS_DIR)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() == ".json" && name.find(".expected.") == std::string::npos) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* kIcGrid = R"({
  "version": 1, "kind": "layered", "channels": {}, "input_dists": {}, "structure": {},
  "layers": [{"sigma_sq": [[0.18, 0.36, 0.36], [0.09, 0.18, 0.18], [0.09, 0.18, 0.18]]}]
})";

}  // namespace

TEST(Expression, Grammar) {
  EXPECT_DOUBLE_EQ(evaluate_expression("1 - 2*$alpha", 0.25), 0.5);
  EXPECT_NEAR(evaluate_expression("(1 - 2*$alpha)*(1 - 2*$alpha)/4", 0.3), 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(evaluate_expression("-(0.5) + 1.5e0", std::nullopt), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("2 - 1 - 1", std::nullopt), 0.0);
  EXPECT_DOUBLE_EQ(evaluate_expression("8 / 4 / 2", std::nullopt), 1.0);
  EXPECT_TRUE(uses_alpha("1 - $alpha"));
  EXPECT_FALSE(uses_alpha("0.5"));
}

TEST(Expression, Errors) {
  EXPECT_EQ(error_of([] { evaluate_expression("1 +", std::nullopt); }).code(), ErrorCode::SyntaxError);
  const auto e = error_of([] { evaluate_expression("1 ) 2", std::nullopt); });
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_NE(std::string(e.what()).find("column 3"), std::string::npos) << e.what();
  EXPECT_EQ(error_of([] { evaluate_expression("$alpha", std::nullopt); }).code(), ErrorCode::ValidationError);
  EXPECT_EQ(error_of([] { evaluate_expression("1/0", std::nullopt); }).code(), ErrorCode::ValidationError);
}

TEST(Document, SyntaxErrorsCarryPosition) {
  const auto empty = error_of([] { parse_document(""); });
  EXPECT_EQ(empty.code(), ErrorCode::SyntaxError);
  const auto bad = error_of([] { parse_document("{\n  \"version\": 1,\n  oops\n}"); });
  EXPECT_EQ(bad.code(), ErrorCode::SyntaxError);
  EXPECT_NE(std::string(bad.what()).find("line 3"), std::string::npos) << bad.what();
}

TEST(Document, SchemaErrorsCarryPointer) {
  auto j = json::parse(kIcGrid);
  j["kind"] = "mesh";
  const auto kind = error_of([&] { parse_document(j.dump()); });
  EXPECT_EQ(kind.code(), ErrorCode::SchemaError);
  EXPECT_NE(std::string(kind.what()).find("/kind"), std::string::npos) << kind.what();

  j = json::parse(kIcGrid);
  j["layers"][0]["sigma_sq"][1] = json::array({0.1, 0.2});
  const auto row = error_of([&] { parse_document(j.dump()); });
  EXPECT_NE(std::string(row.what()).find("/layers/0/sigma_sq/1"), std::string::npos) << row.what();

  j = json::parse(kIcGrid);
  j["extra"] = 1;
  EXPECT_EQ(error_of([&] { parse_document(j.dump()); }).code(), ErrorCode::SchemaError);
}

TEST(Document, InvalidGridNamesTheChain) {
  auto j = json::parse(kIcGrid);
  j["layers"][0]["sigma_sq"][1][0] = 0.9;
  const auto e = error_of([&] { resolve(parse_document(j.dump()), std::nullopt); });
  EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  EXPECT_NE(std::string(e.what()).find("chain"), std::string::npos) << e.what();
  EXPECT_NE(std::string(e.what()).find("/layers/0"), std::string::npos) << e.what();
}

TEST(Document, UnboundAlphaIsValidationError) {
  auto j = json::parse(kIcGrid);
  j["layers"][0]["sigma_sq"][0][0] = "$alpha";
  const auto doc = parse_document(j.dump());
  EXPECT_TRUE(doc.uses_alpha());
  EXPECT_EQ(error_of([&] { resolve(doc, std::nullopt); }).code(), ErrorCode::ValidationError);
  EXPECT_NO_THROW(resolve(doc, 0.18));
}

TEST(Document, SerializeRoundTripsCanonically) {
  for (const auto& path : document_files()) {
    const auto text = read_file(path);
    const auto doc = parse_document(text);
    const auto once = serialize_document(doc);
    EXPECT_EQ(once, canonicalize(text)) << path;
    EXPECT_EQ(serialize_document(parse_document(once)), once) << path;
  }
}

// Each shipped document carries the values its commands must reproduce.
TEST(Documents, ExpectedValues) {
  int checked = 0;
  for (const auto& path : document_files()) {
    auto sidecar = path;
    sidecar.replace_extension(".expected.json");
    ASSERT_TRUE(fs::exists(sidecar)) << sidecar;
    const auto doc = load_document(path.string());
    const auto checks = json::parse(read_file(sidecar)).at("checks");
    for (const auto& c : checks) {
      CommandOptions opts;
      if (c.contains("alpha")) opts.alpha = c.at("alpha").get<double>();
      const auto result = run_command(c.at("command").get<std::string>(), doc, opts);
      const json::json_pointer ptr(c.at("pointer").get<std::string>());
      ASSERT_TRUE(result.contains(ptr)) << path << " " << ptr.to_string() << "\n" << result.dump(2);
      const auto& got = result.at(ptr);
      const auto& want = c.at("value");
      if (want.is_number()) {
        const double tol = c.value("tolerance", 1e-9);
        EXPECT_NEAR(got.get<double>(), want.get<double>(), tol) << path << " " << ptr.to_string();
      } else {
        EXPECT_EQ(got, want) << path << " " << ptr.to_string();
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Commands, CsvFlattensPaths) {
  const auto doc = parse_document(kIcGrid);
  const auto r = run_command("sumcap", doc, {});
  const auto csv = format_result(r, Format::Csv);
  EXPECT_EQ(csv.rfind("quantity,value\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("\nvalue,0.36\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\npath.1,1\n"), std::string::npos) << csv;
  EXPECT_EQ(error_of([&] { run_command("bogus", doc, {}); }).code(), ErrorCode::InvalidArgument);
}

TEST(Commands, RoundsToTwelveDigits) {
  const auto r = round_numbers(json{{"x", 0.1 + 0.2}, {"y", json::array({1.0 / 3.0})}});
  EXPECT_EQ(r.at("x").get<double>(), 0.3);
  EXPECT_EQ(r.at("y")[0].get<double>(), 0.333333333333);
}

TEST(Commands, BatchKeepsInputOrderAndIsolatesErrors) {
  const auto dir = fs::temp_directory_path() / "licnet_batch_test";
  fs::create_directories(dir);
  std::vector<std::string> paths;
  for (int k = 0; k < 6; ++k) {
    const auto p = dir / ("doc" + std::to_string(k) + ".json");
    std::ofstream(p) << (k == 3 ? std::string("{") : std::string(kIcGrid));
    paths.push_back(p.string());
  }
  const auto entries = run_batch("sumcap", paths, {});
  ASSERT_EQ(entries.size(), paths.size());
  for (std::size_t k = 0; k < paths.size(); ++k) {
    EXPECT_EQ(entries[k].document, paths[k]);
    EXPECT_EQ(entries[k].result.has_value(), k != 3);
  }
  EXPECT_NE(entries[3].error.find("SyntaxError"), std::string::npos) << entries[3].error;
  const auto j = batch_to_json(entries);
  EXPECT_EQ(j.size(), paths.size());
  fs::remove_all(dir);
}
