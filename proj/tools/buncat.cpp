#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "buncat/error.hpp"
#include "buncat/schema.hpp"
#include "buncat/taskio.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitMalformed = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw buncat::Error("UnreadableInput", "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"buncat: verify bundle, chain, jet, and exact-sequence task documents"};
  std::string input;
  std::string schema_kind;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--input", input, "task document path, or - for standard input");
  app.add_option("--seed", seed, "seed for randomized probes (overrides the document)");
  app.add_option("--schema", schema_kind, "print the JSON schema for a document kind and exit");
  app.add_flag("--quiet", quiet, "omit passing checks from the report");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!schema_kind.empty()) {
      std::cout << buncat::emit_schema(schema_kind);
      return kExitPass;
    }
    if (input.empty()) {
      std::cerr << "error: --input or --schema required\n";
      return kExitMalformed;
    }
    const std::string text = read_input(input);
    buncat::json doc;
    try {
      doc = buncat::json::parse(text);
    } catch (const buncat::json::parse_error& e) {
      std::cerr << "error: MalformedDocument: " << e.what() << "\n";
      return kExitMalformed;
    }
    const buncat::VerificationReport report = buncat::run_task(doc, seed);
    std::cout << report.to_json(quiet).dump(2) << "\n";
    return report.overall_pass() ? kExitPass : kExitCheckFailed;
  } catch (const buncat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
}
