#include "jury/solver.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "jury/error.h"

namespace jury {
namespace {

// A JER together with its log. Comparisons fall back to the log once either
// value has underflowed to zero.
struct Tail {
  double jer;
  double log_jer;
};

Tail TailOf(double jer, std::span<const double> error_rates) {
  return {jer, jer > 0.0 ? std::log(jer) : LogJerDp(error_rates)};
}

bool Less(const Tail& a, const Tail& b) {
  if (a.jer > 0.0 && b.jer > 0.0) return a.jer < b.jer;
  return a.log_jer < b.log_jer;
}

bool Exceeds(double bound, const Tail& best) {
  return best.jer > 0.0 ? bound > best.jer : std::log(bound) > best.log_jer;
}

std::vector<Juror> Select(const CandidatePool& pool,
                          const std::vector<std::size_t>& indices) {
  std::vector<Juror> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(pool[i]);
  return out;
}

double SumRequirements(const std::vector<Juror>& members) {
  double total = 0.0;
  for (const auto& m : members) total += m.requirement;
  return total;
}

// Appends one juror to a wrong-count pmf (Bernoulli convolution).
void ExtendMass(const std::vector<double>& prev, double e,
                std::vector<double>& next) {
  const std::size_t k = prev.size();
  next.resize(k + 1);
  next[0] = prev[0] * (1.0 - e);
  for (std::size_t j = 1; j < k; ++j) {
    next[j] = prev[j] * (1.0 - e) + prev[j - 1] * e;
  }
  next[k] = prev[k - 1] * e;
}

double TailFromMass(const std::vector<double>& mass) {
  const std::size_t n = mass.size() - 1;
  double tail = 0.0;
  for (std::size_t k = n + 1; k-- > MajorityThreshold(n);) tail += mass[k];
  return std::clamp(tail, 0.0, 1.0);
}

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-300;
}

class OracleSearch {
 public:
  OracleSearch(const CandidatePool& pool, double budget)
      : pool_(pool), budget_(budget), levels_(pool.size() + 1) {
    levels_[0] = {1.0};
    chosen_.reserve(pool.size());
  }

  void Run() { Visit(0, 0.0); }

  bool found() const { return !best_.empty(); }
  const std::vector<std::size_t>& best() const { return best_; }
  double best_jer() const { return best_jer_; }
  std::size_t evaluated() const { return evaluated_; }

 private:
  // Each non-empty subset is reached exactly once, right after its last
  // (highest-index) member is added.
  void Visit(std::size_t start, double cost) {
    for (std::size_t i = start; i < pool_.size(); ++i) {
      const double next_cost = cost + pool_[i].requirement;
      if (!(next_cost <= budget_)) continue;
      const std::size_t k = chosen_.size();
      ExtendMass(levels_[k], pool_[i].epsilon, levels_[k + 1]);
      chosen_.push_back(i);
      if (chosen_.size() % 2 == 1) Consider(next_cost);
      Visit(i + 1, next_cost);
      chosen_.pop_back();
    }
  }

  void Consider(double cost) {
    ++evaluated_;
    const double jer = TailFromMass(levels_[chosen_.size()]);
    if (best_.empty() || Better(jer, cost)) {
      best_ = chosen_;
      best_jer_ = jer;
      best_cost_ = cost;
    }
  }

  bool Better(double jer, double cost) const {
    if (!NearlyEqual(jer, best_jer_)) return jer < best_jer_;
    if (!NearlyEqual(cost, best_cost_)) return cost < best_cost_;
    if (chosen_.size() != best_.size()) return chosen_.size() < best_.size();
    return SortedIds(chosen_) < SortedIds(best_);
  }

  std::vector<std::string> SortedIds(const std::vector<std::size_t>& idx) const {
    std::vector<std::string> ids;
    ids.reserve(idx.size());
    for (std::size_t i : idx) ids.push_back(pool_[i].id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  const CandidatePool& pool_;
  double budget_;
  std::vector<std::vector<double>> levels_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  double best_jer_ = 1.0;
  double best_cost_ = 0.0;
  std::size_t evaluated_ = 0;
};

}  // namespace

CandidatePool::CandidatePool(std::vector<Juror> candidates)
    : candidates_(std::move(candidates)) {
  if (candidates_.empty()) {
    throw Error(ErrorCode::kEmptyPool, "candidate pool is empty");
  }
  std::unordered_set<std::string> seen;
  for (auto& c : candidates_) {
    if (!seen.insert(c.id).second) {
      throw Error(ErrorCode::kInvalidJuror, "duplicate candidate id '" + c.id + "'");
    }
    c = MakeJuror(std::move(c.id), c.epsilon, c.requirement);
  }
}

Budget::Budget(double amount) : amount_(amount) {
  if (std::isnan(amount) || amount < 0.0) {
    throw Error(ErrorCode::kInvalidBudget,
                "budget must be non-negative, got " + std::to_string(amount));
  }
}

SolveResult SolveAltrm(const CandidatePool& pool, const AltrmOptions& options) {
  const std::size_t n_total = pool.size();
  std::vector<std::size_t> order(n_total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pool[a].epsilon != pool[b].epsilon) return pool[a].epsilon < pool[b].epsilon;
    return pool[a].id < pool[b].id;
  });
  std::vector<double> sorted_eps(n_total);
  for (std::size_t i = 0; i < n_total; ++i) sorted_eps[i] = pool[order[i]].epsilon;

  std::size_t best_size = 0;
  Tail best{2.0, std::log(2.0)};
  std::size_t evaluated = 0;
  std::size_t pruned = 0;
  double mu = 0.0;
  double sigma_sq = 0.0;
  std::size_t in_moments = 0;

  for (std::size_t n = 1; n <= n_total; n += 2) {
    for (; in_moments < n; ++in_moments) {
      const double e = sorted_eps[in_moments];
      mu += e;
      sigma_sq += e * (1.0 - e);
    }
    const std::span<const double> prefix(sorted_eps.data(), n);
    if (options.use_pruning && best_size > 0) {
      const BoundDiagnostics diag = JerLowerBoundFromMoments(n, mu, sigma_sq);
      if (diag.bound && Exceeds(*diag.bound, best)) {
        ++pruned;
        continue;
      }
    }
    const Tail tail = TailOf(ComputeJer(prefix, options.algorithm), prefix);
    ++evaluated;
    if (Less(tail, best)) {
      best = tail;
      best_size = n;
    }
  }

  order.resize(best_size);
  std::vector<Juror> members = Select(pool, order);
  const double cost = SumRequirements(members);
  return SolveResult{Jury(std::move(members)), best.jer, cost, evaluated, pruned, best.log_jer};
}

SolveResult SolvePaymGreedy(const CandidatePool& pool, Budget budget) {
  const double limit = budget.amount();
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ka = pool[a].epsilon * pool[a].requirement;
    const double kb = pool[b].epsilon * pool[b].requirement;
    if (ka != kb) return ka < kb;
    if (pool[a].epsilon != pool[b].epsilon) return pool[a].epsilon < pool[b].epsilon;
    return pool[a].id < pool[b].id;
  });

  std::size_t first = 0;
  while (first < order.size() && !(pool[order[first]].requirement <= limit)) ++first;
  if (first == order.size()) {
    throw Error(ErrorCode::kNoAffordableJuror,
                "every candidate requirement exceeds budget " + std::to_string(limit));
  }

  std::vector<std::size_t> selected{order[first]};
  std::vector<double> eps{pool[order[first]].epsilon};
  double spent = pool[order[first]].requirement;
  Tail current = TailOf(eps.front(), eps);
  std::size_t evaluated = 1;
  bool has_pair = false;
  std::size_t pair = 0;

  for (std::size_t m = first + 1; m < order.size(); ++m) {
    const Juror& cand = pool[order[m]];
    if (!has_pair) {
      if (spent + cand.requirement <= limit) {
        pair = order[m];
        has_pair = true;
      }
      continue;
    }
    const Juror& partner = pool[pair];
    if (!(spent + partner.requirement + cand.requirement <= limit)) continue;
    eps.push_back(partner.epsilon);
    eps.push_back(cand.epsilon);
    const Tail tail = TailOf(JerDp(eps), eps);
    ++evaluated;
    if (!Less(current, tail)) {
      selected.push_back(pair);
      selected.push_back(order[m]);
      spent = spent + partner.requirement + cand.requirement;
      current = tail;
      has_pair = false;
    } else {
      eps.resize(eps.size() - 2);
    }
  }

  std::vector<Juror> members = Select(pool, selected);
  const double cost = SumRequirements(members);
  return SolveResult{Jury(std::move(members)), current.jer, cost, evaluated, 0, current.log_jer};
}

SolveResult SolveOracle(const CandidatePool& pool, Budget budget) {
  if (pool.size() > kOracleMaxPoolSize) {
    throw Error(ErrorCode::kSizeLimitExceeded,
                "oracle refused for " + std::to_string(pool.size()) +
                    " candidates (max " + std::to_string(kOracleMaxPoolSize) + ")");
  }
  OracleSearch search(pool, budget.amount());
  search.Run();
  if (!search.found()) {
    throw Error(ErrorCode::kNoAffordableJuror,
                "no odd-sized jury fits budget " + std::to_string(budget.amount()));
  }
  std::vector<Juror> members = Select(pool, search.best());
  const double cost = SumRequirements(members);
  SolveResult result{Jury(std::move(members)), search.best_jer(), cost, search.evaluated(), 0};
  result.log_jer = TailOf(result.jer, result.jury.error_rates()).log_jer;
  return result;
}

ResultComparison CompareResults(const SolveResult& test, const SolveResult& truth) {
  const auto test_ids = test.jury.ids();
  const auto truth_ids = truth.jury.ids();
  const std::set<std::string> truth_set(truth_ids.begin(), truth_ids.end());
  std::size_t common = 0;
  for (const auto& id : std::set<std::string>(test_ids.begin(), test_ids.end())) {
    if (truth_set.count(id)) ++common;
  }
  ResultComparison c;
  c.precision = static_cast<double>(common) / static_cast<double>(test.jury.size());
  c.recall = static_cast<double>(common) / static_cast<double>(truth.jury.size());
  c.jer_gap = test.jer - truth.jer;
  c.cost_gap = test.total_cost - truth.total_cost;
  return c;
}

}  // namespace jury
