#include "jury/estimate.h"

#include <algorithm>
#include <map>

#include "jury/error.h"

namespace jury {

std::string_view RankMethodName(RankMethod method) {
  return method == RankMethod::kHits ? "hits" : "pagerank";
}

RankMethod ParseRankMethod(std::string_view name) {
  if (name == "hits") return RankMethod::kHits;
  if (name == "pagerank") return RankMethod::kPageRank;
  throw Error(ErrorCode::kParseError, "unknown rank method '" + std::string(name) + "'");
}

std::vector<UserEstimate> EstimateUsers(std::span<const TweetRecord> corpus,
                                        const EstimateOptions& options) {
  options.config.Validate();
  const UserGraph graph = BuildGraph(corpus);
  if (graph.empty()) {
    throw Error(ErrorCode::kDegenerateScores, "corpus yields no users");
  }
  const ScoreMap scores = options.method == RankMethod::kHits
                              ? Hits(graph, options.config)
                              : PageRank(graph, options.config);

  std::vector<UserEstimate> rows;
  rows.reserve(scores.score.size());
  for (const auto& [user, s] : scores.score) {
    UserEstimate row{user, s, std::nullopt, 0.5, 0.0};
    if (auto it = scores.hub.find(user); it != scores.hub.end()) row.hub_score = it->second;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.score > b.score;
  });
  if (options.top_k && *options.top_k < rows.size()) rows.resize(*options.top_k);

  std::map<std::string, double> kept;
  for (const auto& r : rows) kept.emplace(r.username, r.score);
  const auto eps = ScoresToErrorRates(kept, options.config);

  // Creation time per author; age is measured from the latest creation.
  std::map<std::string, double> created;
  for (const auto& rec : corpus) {
    if (!rec.author_created_at || !kept.count(rec.author)) continue;
    auto [it, inserted] = created.emplace(rec.author, *rec.author_created_at);
    if (!inserted) it->second = std::min(it->second, *rec.author_created_at);
  }
  std::map<std::string, double> ages;
  if (!created.empty()) {
    double latest = created.begin()->second;
    for (const auto& [user, t] : created) latest = std::max(latest, t);
    for (const auto& [user, t] : created) ages.emplace(user, latest - t);
  }
  const auto req = AgesToRequirements(ages);

  for (auto& r : rows) {
    r.epsilon = eps.at(r.username);
    if (auto it = req.find(r.username); it != req.end()) r.requirement = it->second;
  }
  return rows;
}

CandidatePool ToCandidatePool(const std::vector<UserEstimate>& rows) {
  std::vector<Juror> jurors;
  jurors.reserve(rows.size());
  for (const auto& r : rows) jurors.push_back(MakeJuror(r.username, r.epsilon, r.requirement));
  return CandidatePool(std::move(jurors));
}

}  // namespace jury
