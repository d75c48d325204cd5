#include <algorithm>
#include <cmath>

#include "jury/error.h"
#include "jury/juror.h"
#include "jury/ranking.h"

namespace jury {

std::map<std::string, double> ScoresToErrorRates(
    const std::map<std::string, double>& scores, const RankConfig& config) {
  config.Validate();
  if (scores.empty()) throw Error(ErrorCode::kInvalidConfig, "no scores to normalize");
  auto [lo_it, hi_it] = std::minmax_element(
      scores.begin(), scores.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double hi = hi_it->second;
  if (!(hi > lo)) {
    throw Error(ErrorCode::kDegenerateScores,
                "all " + std::to_string(scores.size()) +
                    " users share the same score; no ranking signal");
  }
  std::map<std::string, double> out;
  for (const auto& [user, s] : scores) {
    const double t = (s - lo) / (hi - lo);
    out.emplace(user, ClampErrorRate(std::pow(config.beta, -config.alpha * t)));
  }
  return out;
}

std::map<std::string, double> AgesToRequirements(
    const std::map<std::string, double>& ages) {
  std::map<std::string, double> out;
  if (ages.empty()) return out;
  auto [lo_it, hi_it] = std::minmax_element(
      ages.begin(), ages.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double span = hi_it->second - lo;
  for (const auto& [user, age] : ages) {
    out.emplace(user, span > 0.0 ? std::clamp((age - lo) / span, 0.0, 1.0) : 0.0);
  }
  return out;
}

}  // namespace jury
