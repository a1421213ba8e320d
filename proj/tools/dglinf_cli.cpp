#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dglinf/cli.hpp"

namespace {

int emit_report(const dglinf::cli::Report& rep, const std::string& path) {
  const std::string text = dglinf::io::dump(rep.body);
  std::cout << text;
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "dglinf: cannot write report to " << path << "\n";
      return dglinf::cli::kUsage;
    }
    out << text;
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact DGLA / L-infinity toolkit"};
  std::string command;
  std::vector<std::string> files;
  std::string report_path;
  dglinf::cli::Options opt;
  int order = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(dglinf::cli::commands()));
  app.add_option("files", files, "Input documents (JSON)")->check(CLI::ExistingFile);
  app.add_option("--weight", opt.weight, "Coalgebra check weight bound")->capture_default_str();
  auto* order_opt = app.add_option("--order", order, "Artinian truncation: Q[t]/(t^N)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--report", report_path, "Also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : dglinf::cli::kUsage;
  }
  if (*order_opt) opt.order = order;
  if (*seed_opt) opt.seed = seed;

  try {
    std::vector<dglinf::cli::NamedDocument> docs;
    for (const auto& f : files) docs.push_back({f, dglinf::io::parse_spec(f)});
    return emit_report(dglinf::cli::run_command(command, docs, opt), report_path);
  } catch (const dglinf::ParseError& e) {
    std::cerr << "dglinf: " << e.what() << "\n";
    return dglinf::cli::kUsage;
  } catch (const dglinf::cli::UsageError& e) {
    std::cerr << "dglinf: " << e.what() << "\n";
    return dglinf::cli::kUsage;
  } catch (const dglinf::Error& e) {
    return emit_report(dglinf::cli::invalid_input_report(command, e), report_path);
  }
}
