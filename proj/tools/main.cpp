#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"
#include "swnet/error.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

std::string usage() {
  std::string u =
      "usage: swnet <experiment> [--config FILE] [--out DIR] [--seeds LIST] [--jobs N]\n"
      "       swnet list\n\nexperiments:\n";
  for (const auto& e : swnet::runner::experiments())
    u += "  " + std::string(e.name) + "\n";
  return u;
}

swnet::runner::Json load_config(const std::string& path) {
  if (path.empty()) return swnet::runner::Json::object();
  std::ifstream in(path);
  if (!in) throw swnet::ConfigError("cannot read config " + path);
  try {
    return swnet::runner::Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw swnet::ConfigError("config " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cout << usage();
    return 0;
  }
  const std::string command = argv[1];
  if (command == "list") {
    std::cout << swnet::runner::list_experiments();
    return 0;
  }
  if (command == "-h" || command == "--help" || command == "help") {
    std::cout << usage();
    return 0;
  }
  if (!swnet::runner::find_experiment(command)) {
    std::cerr << "swnet: unknown subcommand '" << command << "'\n" << usage();
    return kConfigError;
  }

  CLI::App app("swnet " + command);
  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::size_t jobs = 0;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seeds", seeds, "seed list, e.g. 1-10 or 1,4,9");
  app.add_option("--jobs", jobs, "worker threads");
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "swnet: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    auto spec = swnet::runner::parse_spec(load_config(config_path), command);
    if (!out_dir.empty()) spec.output_dir = out_dir;
    if (!seeds.empty()) spec.seeds = swnet::runner::parse_seed_list(seeds);
    if (jobs > 0) spec.jobs = jobs;
    const auto result = swnet::runner::run(spec);
    for (const auto& p : result.outputs) std::cout << p.string() << '\n';
    std::cout << result.manifest.string() << '\n';
  } catch (const swnet::ConfigError& e) {
    std::cerr << "swnet: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "swnet: error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
