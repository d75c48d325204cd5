#pragma once

// Declarative experiment grids, each producing one CSV table.
//
// A spec file holds one experiment object or an array of them:
//
//   {"kind": "altrm-traits", "seeds": [1, 2], "pool_sizes": [1000],
//    "epsilon_means": [0.2, 0.5, 0.7], "epsilon_stddevs": [0.1],
//    "out": "traits.csv"}
//
// Numeric grids accept a list or {"from": a, "to": b, "step": s}.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jury/estimate.h"

namespace jury::cli {

enum class ExperimentKind {
  kAltrmTraits,
  kAltrmTiming,
  kPaymTraits,
  kPaymEffectiveness,
  kRankAndSelect,
};

std::string_view ExperimentKindName(ExperimentKind kind);
ExperimentKind ParseExperimentKind(std::string_view name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kAltrmTraits;
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::size_t> pool_sizes;
  std::vector<double> epsilon_means;
  std::vector<double> epsilon_stddevs;
  std::vector<double> requirement_means{0.0};
  std::vector<double> requirement_stddevs{0.0};
  std::vector<double> budgets;
  std::vector<bool> pruning{true, false};

  // rank-and-select
  std::string corpus;
  std::vector<RankMethod> methods{RankMethod::kHits, RankMethod::kPageRank};
  std::size_t top_k = 20;
  std::vector<double> budget_fractions{0.001, 0.01, 0.1, 0.2};
  RankConfig rank_config;

  /// Output file; defaults to "<kind>.csv".
  std::string out;
  /// Worker threads for independent grid points; 0 means hardware default.
  unsigned threads = 0;
};

/// Throws kParseError on malformed or incomplete specs. Relative `corpus`
/// paths resolve against `base_dir`.
ExperimentSpec ParseExperimentSpec(const nlohmann::json& node, const std::string& base_dir = "");
std::vector<ExperimentSpec> ParseExperimentFile(const std::string& path);

/// Writes the header and one row per grid point, in grid order.
void RunExperiment(const ExperimentSpec& spec, std::ostream& csv);

}  // namespace jury::cli
