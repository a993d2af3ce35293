#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "swnet/spatial_graph.hpp"

namespace swnet::runner {

using Json = nlohmann::ordered_json;

struct TopologySpec {
  PlacementSpec placement;
  double range = 55.0;

  /// e.g. "55-random", "35-grid".
  std::string id() const;
};

struct ExperimentSpec {
  std::string experiment;
  TopologySpec topology;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = "out";
  Json params = Json::object();  // fully resolved (defaults merged)
  std::size_t jobs = 1;
};

struct ExperimentInfo {
  std::string_view name;
  std::string_view summary;
  Json defaults;  // parameter block with default values
};

/// All experiments, alphabetized.
const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo* find_experiment(std::string_view name);

/// Text listing of experiments and their parameters.
std::string list_experiments();

/// Builds a spec from a config document. `experiment` overrides/validates the
/// document's "experiment" key. Throws ConfigError.
ExperimentSpec parse_spec(const Json& doc, std::string_view experiment);

Json spec_to_json(const ExperimentSpec& spec);

/// "1,2,5" or "1-10" or a mix ("1-3,7").
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct RunResult {
  std::vector<std::filesystem::path> outputs;  // CSVs, in write order
  std::filesystem::path manifest;
  Json summary = Json::object();
};

/// Runs the experiment and writes CSVs plus manifest.json into
/// spec.output_dir. Throws ConfigError on bad parameters and
/// std::runtime_error on I/O failure.
RunResult run(const ExperimentSpec& spec);

}  // namespace swnet::runner
