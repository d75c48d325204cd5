#pragma once

// Corpus -> retweet graph -> quality scores -> (epsilon, requirement) per
// user.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jury/graph.h"
#include "jury/ranking.h"
#include "jury/solver.h"

namespace jury {

enum class RankMethod { kHits, kPageRank };

std::string_view RankMethodName(RankMethod method);
/// Accepts "hits" and "pagerank". Throws kParseError otherwise.
RankMethod ParseRankMethod(std::string_view name);

struct UserEstimate {
  std::string username;
  double score = 0.0;
  std::optional<double> hub_score;
  double epsilon = 0.5;
  double requirement = 0.0;
};

struct EstimateOptions {
  RankMethod method = RankMethod::kHits;
  RankConfig config;
  /// Keep only the k best-scored users before normalizing.
  std::optional<std::size_t> top_k;
};

/// Rows sorted by descending score (ties by username). Error rates are
/// normalized over the kept users. Requirements come from account ages
/// (oldest account -> 1); users whose creation time never appears in the
/// corpus get requirement 0. Throws kDegenerateScores when the kept scores
/// are all equal, including the empty-corpus case.
std::vector<UserEstimate> EstimateUsers(std::span<const TweetRecord> corpus,
                                        const EstimateOptions& options);

CandidatePool ToCandidatePool(const std::vector<UserEstimate>& rows);

}  // namespace jury
