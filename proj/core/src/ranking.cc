#include <cmath>
#include <string>
#include <vector>

#include "jury/error.h"
#include "jury/ranking.h"

namespace jury {
namespace {

void NormalizeL2(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (double& x : v) x /= norm;
}

double L1Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

std::vector<double> StartVector(const RankTrace& trace, std::size_t n,
                                 double fill) {
  if (trace.initial.empty()) return std::vector<double>(n, fill);
  if (trace.initial.size() != n) {
    throw Error(ErrorCode::kInvalidConfig,
                "initial vector has " + std::to_string(trace.initial.size()) +
                    " entries for " + std::to_string(n) + " nodes");
  }
  return trace.initial;
}

std::map<std::string, double> ToMap(const std::vector<std::string>& names,
                                    const std::vector<double>& values) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], values[i]);
  return out;
}

}  // namespace

void RankConfig::Validate() const {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "damping must lie in (0, 1)");
  }
  if (!(beta > 1.0)) throw Error(ErrorCode::kInvalidConfig, "beta must exceed 1");
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidConfig, "alpha must be positive");
  if (max_iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_iterations must be at least 1");
  }
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "tolerance must be non-negative");
  }
}

ScoreMap Hits(const UserGraph& graph, const RankConfig& config,
              const RankTrace& trace) {
  config.Validate();
  if (graph.empty()) throw Error(ErrorCode::kEmptyGraph, "graph has no nodes");
  const UserGraph::Indexed g = graph.Index();
  const std::size_t n = g.names.size();

  std::vector<double> authority(n, 1.0);
  std::vector<double> hub = StartVector(trace, n, 1.0);
  std::vector<double> next_auth(n), next_hub(n);
  int iter = 0;
  while (iter < config.max_iterations) {
    ++iter;
    std::fill(next_auth.begin(), next_auth.end(), 0.0);
    for (const auto& [u, v] : g.edges) next_auth[v] += hub[u];
    NormalizeL2(next_auth);
    std::fill(next_hub.begin(), next_hub.end(), 0.0);
    for (const auto& [u, v] : g.edges) next_hub[u] += next_auth[v];
    NormalizeL2(next_hub);

    const double change =
        std::max(L1Distance(next_auth, authority), L1Distance(next_hub, hub));
    authority.swap(next_auth);
    hub.swap(next_hub);
    if (trace.on_iteration) trace.on_iteration(iter, authority);
    if (change <= config.tolerance) break;
  }
  return ScoreMap{ToMap(g.names, authority), ToMap(g.names, hub), iter};
}

ScoreMap PageRank(const UserGraph& graph, const RankConfig& config,
                  const RankTrace& trace) {
  config.Validate();
  if (graph.empty()) throw Error(ErrorCode::kEmptyGraph, "graph has no nodes");
  const UserGraph::Indexed g = graph.Index();
  const std::size_t n = g.names.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double d = config.damping;

  std::vector<std::size_t> out_degree(n, 0);
  for (const auto& [u, v] : g.edges) ++out_degree[u];

  std::vector<double> score = StartVector(trace, n, inv_n);
  std::vector<double> next(n);
  int iter = 0;
  while (iter < config.max_iterations) {
    ++iter;
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (out_degree[i] == 0) dangling += score[i];
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (const auto& [u, v] : g.edges) {
      next[v] += d * score[u] / static_cast<double>(out_degree[u]);
    }
    const double change = L1Distance(next, score);
    score.swap(next);
    if (trace.on_iteration) trace.on_iteration(iter, score);
    if (change <= config.tolerance) break;
  }
  return ScoreMap{ToMap(g.names, score), {}, iter};
}

}  // namespace jury
