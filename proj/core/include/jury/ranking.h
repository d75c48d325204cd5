#pragma once

// Quality scores for users of a retweet graph, and their translation into
// juror error rates and payment requirements.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jury/graph.h"

namespace jury {

struct RankConfig {
  double damping = 0.85;
  int max_iterations = 100;
  double tolerance = 1e-8;  // L1 change that ends iteration
  double alpha = 10.0;      // normalization exponent factor
  double beta = 10.0;       // normalization base

  /// Throws kInvalidConfig unless damping in (0,1), beta > 1, alpha > 0,
  /// max_iterations >= 1 and tolerance >= 0.
  void Validate() const;
};

/// Per-user scores. `hub` is filled only by HITS.
struct ScoreMap {
  std::map<std::string, double> score;
  std::map<std::string, double> hub;
  int iterations = 0;
};

/// Optional knobs for tests and diagnostics. `initial` overrides the starting
/// vector (indexed like UserGraph::Index().names); `on_iteration` sees the
/// score vector after every update.
struct RankTrace {
  std::vector<double> initial;
  std::function<void(int iteration, std::span<const double> scores)> on_iteration;
};

/// HITS with L2 normalization after each half-step; authority is the score.
/// Throws kEmptyGraph.
ScoreMap Hits(const UserGraph& graph, const RankConfig& config,
              const RankTrace& trace = {});

/// PageRank with dangling mass spread uniformly over all nodes.
/// Throws kEmptyGraph.
ScoreMap PageRank(const UserGraph& graph, const RankConfig& config,
                  const RankTrace& trace = {});

/// epsilon = beta^(-alpha (s - min) / (max - min)), clamped into the
/// admissible error-rate range. Throws kDegenerateScores when max == min and
/// kInvalidConfig on an empty map.
std::map<std::string, double> ScoresToErrorRates(
    const std::map<std::string, double>& scores, const RankConfig& config);

/// Min-max normalization into [0, 1]; all zero when every age is equal.
std::map<std::string, double> AgesToRequirements(
    const std::map<std::string, double>& ages);

}  // namespace jury
